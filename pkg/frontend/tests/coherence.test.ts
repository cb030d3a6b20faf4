/**
 * Cross-implementation coherence: everything this UI saves must satisfy
 * the batch toolkit byte-for-byte, and everything the toolkit produces
 * must load here.  The file format is the only contract between the two.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseNotebook } from "../src/parse.js";
import { serializeNotebookBytes } from "../src/serialize.js";
import { Session } from "../src/session.js";
import { sampleBytes, text } from "./helpers.js";

const scratch = mkdtempSync(join(tmpdir(), "sln-ui-"));

function cli(args: string[], input?: Uint8Array): { status: number; stdout: string } {
  const file = join(scratch, `in-${Math.random().toString(36).slice(2)}.sln`);
  if (input) writeFileSync(file, input);
  try {
    const stdout = execFileSync(
      "python3", ["-m", "sln.cli", ...args.map((a) => (a === "@INPUT@" ? file : a))],
      { encoding: "utf-8" },
    );
    return { status: 0, stdout };
  } catch (error) {
    const failure = error as { status?: number; stdout?: string };
    return { status: failure.status ?? -1, stdout: failure.stdout ?? "" };
  }
}

describe("UI-saved files against the primary CLI", () => {
  it("sample loaded and saved unchanged validates with exit 0", () => {
    const result = Session.load(sampleBytes());
    if (!result.ok) throw new Error("sample must load");
    const saved = result.session.saveBytes();
    const verdict = cli(["validate", "@INPUT@"], saved);
    expect(verdict.status).toBe(0);
    expect(verdict.stdout.trim()).toBe("valid");
  });

  it("edited sessions still validate with exit 0", () => {
    const result = Session.load(sampleBytes());
    if (!result.ok) throw new Error("sample must load");
    const session = result.session;
    session.addContact({
      name: "Näme", surname: "ß-Surname",
      email: "a@b.c", webpage: "", notes: "unicode {\u{10000}} ok",
    });
    session.addDataset({ name: "csv", notes: "", content: "a,b\n<1>,&2;\r\nend" });
    session.addTodo({ text: "revalidate", dueDate: "2014-09-07", done: true });
    const verdict = cli(["validate", "@INPUT@"], session.saveBytes());
    expect(verdict.status).toBe(0);
  });

  it("serializes byte-identically to the primary's canonical form", () => {
    const mine = serializeNotebookBytes(parseNotebook(sampleBytes()));
    const file = join(scratch, "canonical-input.sln");
    writeFileSync(file, sampleBytes());
    const theirs = execFileSync("python3", ["-c", `
import sys
from sln import parse_notebook, serialize_notebook_bytes
sys.stdout.buffer.write(serialize_notebook_bytes(parse_notebook(open(sys.argv[1], "rb").read())))
`, file]);
    expect(text(mine)).toBe(theirs.toString("utf-8"));
  });

  it("model round-trips through the primary parser", () => {
    const result = Session.load(sampleBytes());
    if (!result.ok) throw new Error("sample must load");
    const saved = result.session.saveBytes();
    const stats = cli(["stats", "@INPUT@"], saved);
    expect(stats.status).toBe(0);
    expect(stats.stdout).toContain("website_count=1");
  });
});

describe("primary-generated files in the UI", () => {
  it("loads a fresh `sln new` file as an empty notebook", () => {
    const file = join(scratch, "fresh.sln");
    execFileSync("python3", ["-m", "sln.cli", "new", file]);
    const result = Session.load(new Uint8Array(readFileSync(file)));
    if (!result.ok) throw new Error("fresh file must load");
    expect(result.session.notebook.websites).toHaveLength(0);
  });

  it("loads a CLI merge of the sample with itself", () => {
    const a = join(scratch, "a.sln");
    const out = join(scratch, "merged.sln");
    writeFileSync(a, sampleBytes());
    execFileSync("python3", ["-m", "sln.cli", "merge", a, a, "-o", out, "--prefer", "both"]);
    const result = Session.load(new Uint8Array(readFileSync(out)));
    if (!result.ok) throw new Error("merged file must load");
    expect(result.session.notebook.websites).toHaveLength(2);
  });

  it("agrees with `sln query` on the shared fixture", () => {
    const result = Session.load(sampleBytes());
    if (!result.ok) throw new Error("sample must load");
    const mine = result.session.search("SOHO").map(
      (hit) => result.session.notebook.websites[hit.entry].name,
    );
    const file = join(scratch, "query.sln");
    writeFileSync(file, sampleBytes());
    const theirs = execFileSync(
      "python3", ["-m", "sln.cli", "query", file, "SOHO"], { encoding: "utf-8" },
    ).trim().split("\n").filter(Boolean).map((line) => line.split("\t")[2]);
    expect(mine).toEqual(theirs);
  });
});
