import { describe, expect, it } from "vitest";

import { validate } from "../src/validate.js";
import { encode, sampleBytes, text } from "./helpers.js";

const NS = "http://umbra.nascom.nasa.gov/";

function replaceBytes(data: Uint8Array, from: string, to: string): Uint8Array {
  const swapped = text(data).replace(from, to);
  expect(swapped).not.toBe(text(data));
  return encode(swapped);
}

describe("validator", () => {
  it("accepts the sample with zero findings", () => {
    const report = validate(sampleBytes());
    expect(report.valid).toBe(true);
    expect(report.findings).toHaveLength(0);
  });

  it("flags a deleted surname as exactly one required-attribute error", () => {
    const report = validate(replaceBytes(sampleBytes(), ' surname="Contact"', ""));
    expect(report.findings).toHaveLength(1);
    expect(report.findings[0].ruleId).toBe("SLN-ATT-002");
    expect(report.findings[0].path.endsWith("/contacts/contact")).toBe(true);
  });

  it("flags reordered contact children as sequence-order only", () => {
    const report = validate(replaceBytes(
      sampleBytes(),
      "<email>email@nasa.gov</email>\n      <webpage>nasa.gov</webpage>",
      "<webpage>nasa.gov</webpage>\n      <email>email@nasa.gov</email>",
    ));
    expect(report.findings.map((f) => f.ruleId)).toEqual(["SLN-SEQ-002"]);
  });

  it("keeps duplicated contacts valid (unbounded repeat)", () => {
    const contact = `<contact name="New" surname="Contact">
      <email>email@nasa.gov</email>
      <webpage>nasa.gov</webpage>
      <notes>New Contact</notes>
    </contact>`;
    const report = validate(replaceBytes(sampleBytes(), contact, contact + contact));
    expect(report.valid).toBe(true);
  });

  it("flags unqualified children as namespace errors only", () => {
    const report = validate(replaceBytes(sampleBytes(), "<email>", '<email xmlns="">'));
    expect(report.findings.map((f) => f.ruleId)).toEqual(["SLN-NS-002"]);
  });

  it("reports every independent violation in document order", () => {
    const doc = encode(`<?xml version="1.0" encoding="utf-8"?>
<sln xmlns="${NS}">
  <website name="n" location="l"><purpose>p</purpose><date>oops</date></website>
  <website name="" location="l"><purpose>p</purpose><date>2014-01-01</date></website>
</sln>`);
    const report = validate(doc);
    expect(report.findings.map((f) => f.ruleId)).toEqual(["SLN-LEX-001", "SLN-LEX-002"]);
    expect(report.findings.map((f) => f.path)).toEqual([
      "/sln/website/date", "/sln/website[2]",
    ]);
  });

  it("downgrades unknown content in lenient mode", () => {
    const doc = encode(`<?xml version="1.0"?><sln xmlns="${NS}">
      <website name="n" location="l"><purpose>p</purpose>
      <date>2014-01-01</date><mystery/></website></sln>`);
    expect(validate(doc).valid).toBe(false);
    const lenient = validate(doc, true);
    expect(lenient.valid).toBe(true);
    expect(lenient.findings[0].severity).toBe("Warning");
  });

  it("treats an empty purpose as an advisory warning", () => {
    const doc = encode(`<?xml version="1.0"?><sln xmlns="${NS}">
      <website name="n" location="l"><purpose/>
      <date>2014-01-01</date></website></sln>`);
    const report = validate(doc);
    expect(report.valid).toBe(true);
    expect(report.findings.map((f) => f.ruleId)).toEqual(["SLN-ADV-001"]);
  });

  it("rejects foreign roots with the root rule", () => {
    const report = validate(encode("<foo/>"));
    expect(report.valid).toBe(false);
    expect(report.findings.map((f) => f.ruleId)).toEqual(["SLN-NS-001"]);
  });
});
