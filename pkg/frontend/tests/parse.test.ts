import { describe, expect, it } from "vitest";

import { parseNotebook, SlnParseError } from "../src/parse.js";
import { serializeNotebookBytes } from "../src/serialize.js";
import { encode, sampleBytes, text } from "./helpers.js";

const NS = "http://umbra.nascom.nasa.gov/";

function wrap(body: string): Uint8Array {
  return encode(`<?xml version="1.0" encoding="utf-8"?>\n<sln xmlns="${NS}">${body}</sln>`);
}

const SITE = '<website name="n" location="l"><purpose>p</purpose><date>2014-09-05</date></website>';

describe("sample document", () => {
  it("parses to the expected model", () => {
    const nb = parseNotebook(sampleBytes());
    expect(nb.websites).toHaveLength(1);
    const site = nb.websites[0];
    expect(site.name).toBe("Latest SOHO Images");
    expect(site.purpose).toBe("SOHO remote sensing data");
    expect(site.date).toBe("2014-09-05");
    expect(site.related).toHaveLength(4);
    expect(site.contacts).toHaveLength(1);
    expect(site.contacts[0]).toEqual({
      name: "New", surname: "Contact",
      email: "email@nasa.gov", webpage: "nasa.gov", notes: "New Contact",
    });
    expect(nb.schemaLocation).toBe(`${NS}sln/schema/sln.xsd`);
  });

  it("round-trips through the canonical serializer", () => {
    const nb = parseNotebook(sampleBytes());
    const first = serializeNotebookBytes(nb);
    const second = serializeNotebookBytes(parseNotebook(first));
    expect(text(second)).toBe(text(first));
  });
});

describe("strict errors", () => {
  function kindOf(bytes: Uint8Array): string {
    try {
      parseNotebook(bytes);
      return "(accepted)";
    } catch (error) {
      if (error instanceof SlnParseError) return error.kind;
      throw error;
    }
  }

  it("classifies failures", () => {
    expect(kindOf(encode("<foo/>"))).toBe("WrongRootNamespace");
    expect(kindOf(encode("<sln/>"))).toBe("WrongRootNamespace");
    expect(kindOf(encode("<sln"))).toBe("NotWellFormed");
    expect(kindOf(wrap("<bogus/>"))).toBe("UnknownElement");
    expect(kindOf(wrap('<website name="n"/>'))).toBe("BadAttribute");
    expect(kindOf(wrap('<website name="n" location="l" extra="x"/>'))).toBe("BadAttribute");
    expect(kindOf(encode('<?xml version="1.0" encoding="latin-1"?><sln xmlns="' + NS + '"/>')))
      .toBe("BadEncoding");
    expect(kindOf(new Uint8Array([0xff, 0xfe, 0x3c, 0x00]))).toBe("BadEncoding");
  });

  it("rejects bad dates and duplicate children", () => {
    expect(kindOf(wrap(
      '<website name="n" location="l"><purpose/><date>2014-13-40</date></website>',
    ))).toBe("BadAttribute");
    expect(kindOf(wrap(
      '<website name="n" location="l"><purpose/><purpose/><date>2014-01-01</date></website>',
    ))).toBe("BadAttribute");
  });

  it("accepts an empty root and missing containers", () => {
    expect(parseNotebook(wrap("")).websites).toHaveLength(0);
    const nb = parseNotebook(wrap(SITE));
    expect(nb.websites[0].related).toHaveLength(0);
    expect(nb.websites[0].purpose).toBe("p");
  });
});
