"""Validate documents and inspect the findings the rule engine produces.

Every violated rule yields a path-addressed finding; validation never
stops at the first problem, so one run reports everything wrong.
"""

from sln import explain, rule_catalogue, validate

NS = "http://umbra.nascom.nasa.gov/"

GOOD = f"""<?xml version="1.0" encoding="utf-8"?>
<sln xmlns="{NS}">
  <website name="LMSAL Latest Events" location="http://www.lmsal.com/solarsoft/">
    <purpose>flare event listings</purpose>
    <date>2014-09-05</date>
  </website>
</sln>""".encode()

# Three independent problems: a misspelled date, a missing surname
# attribute, and contact children out of order.
BAD = f"""<?xml version="1.0" encoding="utf-8"?>
<sln xmlns="{NS}">
  <website name="LMSAL Latest Events" location="http://www.lmsal.com/solarsoft/">
    <purpose>flare event listings</purpose>
    <date>2014-9-5</date>
    <contacts>
      <contact name="Solar">
        <webpage>lmsal.com</webpage>
        <email>x@lmsal.com</email>
        <notes/>
      </contact>
    </contacts>
  </website>
</sln>""".encode()

report = validate(GOOD)
print(f"good document valid={report.valid}, findings={len(report.findings)}")

report = validate(BAD)
print(f"bad document valid={report.valid}")
print(report.to_text())

print("\nwhat those rules mean:")
for rule_id in sorted({finding.rule_id for finding in report.findings}):
    print(" ", explain(rule_id))

print(f"\nfull catalogue: {len(rule_catalogue())} rules")
