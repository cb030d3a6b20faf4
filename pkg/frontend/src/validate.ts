/**
 * Rule engine for the notebook schema, producing path-addressed findings.
 *
 * Rule ids, severities and finding order match the command-line validator
 * exactly, so files rejected here are rejected there and vice versa.
 * Invalid files surface this report in the UI instead of partial content.
 */

import { decodeDataUri } from "./datauri.js";
import { SLN_NAMESPACE, XSI_NAMESPACE, isCalendarDate } from "./model.js";
import { parseDocument } from "./parse.js";
import { XmlElement } from "./xml.js";

export type Severity = "Error" | "Warning";

export interface Finding {
  ruleId: string;
  path: string;
  severity: Severity;
  message: string;
}

export interface ValidationReport {
  valid: boolean;
  findings: Finding[];
}

export interface Rule {
  id: string;
  description: string;
  construct:
    | "SequenceOrder"
    | "RequiredAttribute"
    | "Occurrence"
    | "SimpleTypeLexical"
    | "NamespaceQualified"
    | "UnknownContent";
}

type AttrKind = "string" | "nonempty" | "dim" | "date" | "bool";
type TextKind = "none" | "any" | "purpose" | "date" | "datauri" | "todo";

interface ElemType {
  children: Array<[string, string, number, number | null]>;
  attrs: Record<string, [AttrKind, boolean]>;
  text: TextKind;
  occRule: string;
  seqRule: string | null;
  attRule: string | null;
}

function elem(spec: Partial<ElemType>): ElemType {
  return {
    children: [], attrs: {}, text: "none",
    occRule: "SLN-OCC-001", seqRule: null, attRule: null,
    ...spec,
  };
}

function container(item: string, itemType: string): ElemType {
  return elem({ children: [[item, itemType, 1, null]], occRule: "SLN-OCC-002" });
}

const TYPES: Record<string, ElemType> = {
  sln: elem({ children: [["website", "website", 0, null]] }),
  website: elem({
    children: [
      ["purpose", "purpose", 1, 1],
      ["date", "date", 1, 1],
      ["related", "related", 0, 1],
      ["contacts", "contacts", 0, 1],
      ["datasets", "datasets", 0, 1],
      ["images", "images", 0, 1],
      ["videos", "videos", 0, 1],
      ["todos", "todos", 0, 1],
      ["othernotes", "othernotes", 0, 1],
    ],
    attrs: { name: ["nonempty", true], location: ["string", true] },
    seqRule: "SLN-SEQ-001",
    attRule: "SLN-ATT-001",
  }),
  purpose: elem({ text: "purpose" }),
  date: elem({ text: "date" }),
  related: container("reluri", "reluri"),
  reluri: elem({
    children: [["notes", "text", 1, 1]],
    attrs: { value: ["nonempty", true] },
    occRule: "SLN-OCC-004",
    attRule: "SLN-ATT-003",
  }),
  contacts: container("contact", "contact"),
  contact: elem({
    children: [["email", "text", 1, 1], ["webpage", "text", 1, 1], ["notes", "text", 1, 1]],
    attrs: { name: ["nonempty", true], surname: ["nonempty", true] },
    occRule: "SLN-OCC-003",
    seqRule: "SLN-SEQ-002",
    attRule: "SLN-ATT-002",
  }),
  datasets: container("dataset", "dataset"),
  dataset: elem({
    children: [["notes", "text", 1, 1], ["content", "text", 1, 1]],
    attrs: { name: ["nonempty", true] },
    occRule: "SLN-OCC-005",
    seqRule: "SLN-SEQ-003",
    attRule: "SLN-ATT-004",
  }),
  images: container("image", "image"),
  image: elem({
    children: [["notes", "text", 1, 1], ["data", "image-data", 1, 1], ["thumbnail", "thumbnail", 1, 1]],
    attrs: { name: ["nonempty", true], url: ["string", false] },
    occRule: "SLN-OCC-006",
    seqRule: "SLN-SEQ-004",
    attRule: "SLN-ATT-005",
  }),
  "image-data": elem({
    text: "datauri",
    attrs: { width: ["dim", true], height: ["dim", true] },
    attRule: "SLN-ATT-005",
  }),
  thumbnail: elem({
    text: "datauri",
    attrs: { width: ["dim", true], height: ["dim", true] },
    attRule: "SLN-ATT-005",
  }),
  videos: container("video", "video"),
  video: elem({
    children: [["notes", "text", 1, 1], ["data", "video-data", 0, 1]],
    attrs: { name: ["nonempty", true] },
    occRule: "SLN-OCC-007",
    seqRule: "SLN-SEQ-005",
    attRule: "SLN-ATT-006",
  }),
  "video-data": elem({ text: "datauri" }),
  todos: container("todo", "todo"),
  todo: elem({ text: "todo", attrs: { due: ["date", false], done: ["bool", false] } }),
  othernotes: container("note", "text"),
  text: elem({ text: "any" }),
};

const LENIENT_DOWNGRADE = new Set(["SLN-UNK-001", "SLN-UNK-002", "SLN-UNK-003"]);
const ALWAYS_WARNING = new Set(["SLN-ADV-001"]);

function validDim(value: string): boolean {
  return /^[0-9]+$/.test(value) && Number(value) >= 1 && Number(value) <= 2048;
}

class Checker {
  raw: Array<[string, string, string]> = [];

  report(ruleId: string, path: string, message: string): void {
    this.raw.push([ruleId, path, message]);
  }

  root(el: XmlElement): void {
    const path = `/${el.local}`;
    if (el.ns !== SLN_NAMESPACE || el.local !== "sln") {
      this.report("SLN-NS-001", path, `root is '${el.local}' in namespace '${el.ns || "(none)"}'`);
      return;
    }
    this.element(el, "sln", path);
  }

  element(el: XmlElement, typeName: string, path: string): void {
    const type = TYPES[typeName];
    this.checkAttrs(el, type, path);

    if (type.text === "none") {
      if (el.text.trim()) {
        this.report("SLN-UNK-003", path, "unexpected text in element-only content");
      }
    } else if (type.text === "datauri") {
      this.checkDataUri(el, path);
    }

    const childMap = new Map(type.children.map((c, slot) => [c[0], { c, slot }]));
    const counts = new Map<string, number>();
    let maxSlot = -1;
    let dataDims: [number, number] | null = null;

    for (const child of el.children) {
      const ordinal = (counts.get(child.local) ?? 0) + 1;
      counts.set(child.local, ordinal);
      const segment = ordinal === 1 ? child.local : `${child.local}[${ordinal}]`;
      const childPath = `${path}/${segment}`;
      const known = childMap.get(child.local);

      if (child.ns !== SLN_NAMESPACE) {
        this.report("SLN-NS-002", childPath,
                    `element '${child.local}' is in namespace '${child.ns || "(none)"}'`);
        if (!known) continue;
      } else if (!known) {
        this.report("SLN-UNK-001", childPath, `unknown element <${child.local}>`);
        continue;
      }

      const { c, slot } = known!;
      if (slot < maxSlot && type.seqRule) {
        this.report(type.seqRule, childPath, `<${child.local}> appears out of sequence order`);
      }
      maxSlot = Math.max(maxSlot, slot);
      const hi = c[3];
      if (hi !== null && ordinal > hi) {
        this.report(type.occRule, childPath, `<${child.local}> occurs more than ${hi} time(s)`);
      }

      if (c[1] === "thumbnail") {
        const dims = parseDims(child);
        if (dims && dataDims && (dims[0] > dataDims[0] || dims[1] > dataDims[1])) {
          this.report("SLN-LEX-003", childPath,
                      `thumbnail ${dims[0]}x${dims[1]} exceeds full image ${dataDims[0]}x${dataDims[1]}`);
        }
      } else if (c[1] === "image-data") {
        dataDims = parseDims(child);
      }
      this.element(child, c[1], childPath);
    }

    if (TYPES[typeName].text === "date" && !isCalendarDate(el.text)) {
      this.report("SLN-LEX-001", path, `not a YYYY-MM-DD calendar date: '${el.text}'`);
    } else if (type.text === "purpose" && !el.text.trim()) {
      this.report("SLN-ADV-001", path, "purpose is empty");
    } else if (type.text === "todo" && !el.text) {
      this.report("SLN-LEX-006", path, "todo text is empty");
    }
    for (const [childName, , lo] of type.children) {
      const have = counts.get(childName) ?? 0;
      if (have < lo) {
        this.report(type.occRule, path, `expected at least ${lo} <${childName}>, found ${have}`);
      }
    }
  }

  private checkAttrs(el: XmlElement, type: ElemType, path: string): void {
    for (const [key, value] of el.attrs) {
      const space = key.indexOf(" ");
      const ns = space < 0 ? "" : key.slice(0, space);
      const local = space < 0 ? key : key.slice(space + 1);
      if (ns === XSI_NAMESPACE) continue;
      const spec = type.attrs[local];
      if (ns || !spec) {
        this.report("SLN-UNK-002", path, `unknown attribute '${local}'`);
        continue;
      }
      const kind = spec[0];
      if (kind === "nonempty" && !value) {
        this.report("SLN-LEX-002", path, `attribute '${local}' must be non-empty`);
      } else if (kind === "dim" && !validDim(value)) {
        this.report("SLN-LEX-003", path,
                    `attribute '${local}' must be an integer in [1, 2048], got '${value}'`);
      } else if (kind === "date" && !isCalendarDate(value)) {
        this.report("SLN-LEX-005", path, `attribute '${local}' must be YYYY-MM-DD, got '${value}'`);
      } else if (kind === "bool" && value !== "true" && value !== "false") {
        this.report("SLN-LEX-005", path, `attribute '${local}' must be 'true' or 'false', got '${value}'`);
      }
    }
    for (const [key, [, required]] of Object.entries(type.attrs)) {
      if (required && !el.attrs.has(key)) {
        this.report(type.attRule ?? "SLN-ATT-001", path, `missing required attribute '${key}'`);
      }
    }
  }

  private checkDataUri(el: XmlElement, path: string): void {
    try {
      decodeDataUri(el.text);
    } catch (error) {
      this.report("SLN-LEX-004", path, (error as Error).message);
    }
  }
}

function parseDims(el: XmlElement): [number, number] | null {
  const width = el.attrs.get("width") ?? "";
  const height = el.attrs.get("height") ?? "";
  return validDim(width) && validDim(height) ? [Number(width), Number(height)] : null;
}

/** Validate document bytes; throws SlnParseError when not well-formed. */
export function validate(bytes: Uint8Array, lenient = false): ValidationReport {
  const root = parseDocument(bytes);
  const checker = new Checker();
  checker.root(root);
  const findings = checker.raw.map(([ruleId, path, message]): Finding => {
    let severity: Severity = "Error";
    if (ALWAYS_WARNING.has(ruleId) || (lenient && LENIENT_DOWNGRADE.has(ruleId))) {
      severity = "Warning";
    }
    return { ruleId, path, severity, message };
  });
  return { valid: findings.every((f) => f.severity !== "Error"), findings };
}
