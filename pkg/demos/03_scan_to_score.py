"""From scanner output to a scored scope.

A scan can only see porosity: hosts that are up and ports that are open.
Controls and limitations are analyst judgements, supplied in a scope file
and merged with the scanned counts.
"""

from ravkit import (
    ControlCounts,
    LimitationCounts,
    Scope,
    actual_security,
    import_scan_report,
    merge_scan_into_scope,
    render_report,
)

SCAN = b"""<?xml version="1.0"?>
<nmaprun scanner="nmap" xmloutputversion="1.05">
  <host>
    <status state="up"/>
    <address addr="192.0.2.7" addrtype="ipv4"/>
    <ports>
      <port protocol="tcp" portid="22"><state state="open"/></port>
      <port protocol="tcp" portid="80"><state state="open"/></port>
      <port protocol="tcp" portid="443"><state state="open"/></port>
      <port protocol="tcp" portid="25"><state state="filtered"/></port>
    </ports>
  </host>
  <host><status state="down"/></host>
</nmaprun>
"""

report = import_scan_report(SCAN)
print(f"hosts seen: {report.hosts_total}, up: {report.hosts_up}, "
      f"open ports: {report.open_ports}")
print(f"ignored elements: {dict(report.ignored_elements)}")
print(f"scanned porosity: {report.porosity}")
print()

analyst_view = Scope(
    id="web-server",
    channel="data-network",
    vector="internet",
    index="ipv4",
    controls=ControlCounts(authentication=2, confidentiality=1),
    limitations=LimitationCounts(vulnerabilities=1, concerns=1),
)
scope = merge_scan_into_scope(report.porosity, analyst_view)
print(render_report(actual_security(scope), scope, "text").decode())
