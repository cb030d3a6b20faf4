/**
 * Strict document -> Notebook parsing, mirroring the wire format exactly:
 * unknown elements or attributes and bad values are errors, only utf-8 is
 * accepted, and foreign root namespaces are rejected outright.
 */

import { decodeDataUri } from "./datauri.js";
import {
  Contact,
  Dataset,
  ImageRecord,
  InvalidEntry,
  Notebook,
  RelatedUrl,
  SLN_NAMESPACE,
  TodoItem,
  VideoRecord,
  WebsiteEntry,
  XSI_NAMESPACE,
  checkEntry,
  checkImage,
  isCalendarDate,
} from "./model.js";
import { parseXml, XmlElement, XmlError } from "./xml.js";

export type ParseErrorKind =
  | "NotWellFormed"
  | "WrongRootNamespace"
  | "UnknownElement"
  | "BadAttribute"
  | "BadEncoding";

export class SlnParseError extends Error {
  constructor(
    public kind: ParseErrorKind,
    public line: number,
    public column: number,
    public detail: string,
  ) {
    super(`${kind} at ${line}:${column}: ${detail}`);
  }
}

function fail(kind: ParseErrorKind, el: XmlElement | null, detail: string): never {
  throw new SlnParseError(kind, el?.line ?? 1, el?.column ?? 1, detail);
}

export function decodeDocument(bytes: Uint8Array): string {
  try {
    // fatal mode also rejects UTF-16/32 byte order marks.
    return new TextDecoder("utf-8", { fatal: true }).decode(bytes);
  } catch {
    throw new SlnParseError("BadEncoding", 1, 1, "document is not valid utf-8");
  }
}

export function parseDocument(bytes: Uint8Array): XmlElement {
  const text = decodeDocument(bytes);
  let root: XmlElement;
  let encoding: string | null;
  try {
    ({ root, encoding } = parseXml(text));
  } catch (error) {
    if (error instanceof XmlError) {
      throw new SlnParseError("NotWellFormed", error.line, error.column, error.message);
    }
    throw error;
  }
  if (encoding !== null && encoding.toLowerCase() !== "utf-8") {
    throw new SlnParseError("BadEncoding", 1, 1, `unsupported encoding ${encoding}`);
  }
  return root;
}

export function parseNotebook(bytes: Uint8Array): Notebook {
  const root = parseDocument(bytes);
  if (root.ns !== SLN_NAMESPACE || root.local !== "sln") {
    fail("WrongRootNamespace", root,
         `expected root 'sln' in namespace ${SLN_NAMESPACE}, got '${root.local}' in '${root.ns}'`);
  }
  let schemaLocation: string | null = null;
  for (const [key, value] of root.attrs) {
    if (key === `${XSI_NAMESPACE} schemaLocation`) {
      const tokens = value.split(/\s+/).filter(Boolean);
      for (let i = 0; i + 1 < tokens.length; i += 2) {
        if (tokens[i] === SLN_NAMESPACE) schemaLocation = tokens[i + 1];
      }
    } else {
      fail("BadAttribute", root, `unexpected attribute '${key}' on root`);
    }
  }
  requireElementOnly(root);
  const websites = root.children.map(parseWebsite);
  return { websites, schemaLocation };
}

function requireElementOnly(el: XmlElement): void {
  if (el.text.trim()) fail("BadAttribute", el, `unexpected text content inside <${el.local}>`);
}

function checkChild(parent: XmlElement, child: XmlElement, allowed: string[]): string {
  if (child.ns !== SLN_NAMESPACE) {
    fail("UnknownElement", child,
         `element '${child.local}' is not namespace-qualified as ${SLN_NAMESPACE}`);
  }
  if (!allowed.includes(child.local)) {
    fail("UnknownElement", child, `element <${child.local}> not allowed inside <${parent.local}>`);
  }
  return child.local;
}

function checkAttrs(el: XmlElement, required: string[], optional: string[] = []): void {
  for (const key of el.attrs.keys()) {
    if (!required.includes(key) && !optional.includes(key)) {
      fail("BadAttribute", el, `unexpected attribute '${key}' on <${el.local}>`);
    }
  }
  for (const key of required) {
    if (!el.attrs.has(key)) {
      fail("BadAttribute", el, `<${el.local}> is missing required attribute '${key}'`);
    }
  }
}

function textOf(el: XmlElement): string {
  if (el.children.length) {
    fail("UnknownElement", el.children[0],
         `element <${el.children[0].local}> not allowed inside <${el.local}>`);
  }
  return el.text;
}

const CONTAINERS = [
  "related", "contacts", "datasets", "images", "videos", "todos", "othernotes",
];

function parseWebsite(el: XmlElement): WebsiteEntry {
  if (el.ns !== SLN_NAMESPACE || el.local !== "website") {
    checkChild({ local: "sln" } as XmlElement, el, ["website"]);
  }
  checkAttrs(el, ["name", "location"]);
  requireElementOnly(el);
  const seen = new Set<string>();
  const entry: WebsiteEntry = {
    name: el.attrs.get("name")!,
    location: el.attrs.get("location")!,
    date: "",
    purpose: "",
    related: [], contacts: [], datasets: [], images: [],
    videos: [], todos: [], otherNotes: [],
  };
  for (const child of el.children) {
    const local = checkChild(el, child, ["purpose", "date", ...CONTAINERS]);
    if (seen.has(local)) fail("BadAttribute", child, `duplicate element <${local}> inside <website>`);
    seen.add(local);
    switch (local) {
      case "purpose": entry.purpose = textOf(child); break;
      case "date": entry.date = textOf(child); break;
      case "related": entry.related = items(child, "reluri", parseRelated); break;
      case "contacts": entry.contacts = items(child, "contact", parseContact); break;
      case "datasets": entry.datasets = items(child, "dataset", parseDataset); break;
      case "images": entry.images = items(child, "image", parseImage); break;
      case "videos": entry.videos = items(child, "video", parseVideo); break;
      case "todos": entry.todos = items(child, "todo", parseTodo); break;
      case "othernotes": entry.otherNotes = items(child, "note", (n) => ({ text: textOf(n) })); break;
    }
  }
  if (!seen.has("purpose") || !seen.has("date")) {
    fail("BadAttribute", el, "<website> is missing required purpose/date");
  }
  try {
    checkEntry(entry);
  } catch (error) {
    if (error instanceof InvalidEntry) fail("BadAttribute", el, error.message);
    throw error;
  }
  return entry;
}

function items<T>(container: XmlElement, itemName: string, parse: (el: XmlElement) => T): T[] {
  requireElementOnly(container);
  return container.children.map((child) => {
    checkChild(container, child, [itemName]);
    return parse(child);
  });
}

/** Collect single-occurrence text children by name, erroring on strays. */
function childTexts(el: XmlElement, names: string[]): Map<string, string> {
  requireElementOnly(el);
  const out = new Map<string, string>();
  for (const child of el.children) {
    const local = checkChild(el, child, names);
    if (out.has(local)) fail("BadAttribute", child, `duplicate element <${local}> inside <${el.local}>`);
    out.set(local, textOf(child));
  }
  return out;
}

function requireTexts(el: XmlElement, map: Map<string, string>, names: string[]): void {
  const missing = names.filter((n) => !map.has(n));
  if (missing.length) {
    fail("BadAttribute", el, `<${el.local}> is missing required [${missing.join(", ")}]`);
  }
}

function parseRelated(el: XmlElement): RelatedUrl {
  checkAttrs(el, ["value"]);
  const texts = childTexts(el, ["notes"]);
  requireTexts(el, texts, ["notes"]);
  const value = el.attrs.get("value")!;
  if (!value) fail("BadAttribute", el, "related URL value must not be empty");
  return { value, notes: texts.get("notes")! };
}

function parseContact(el: XmlElement): Contact {
  checkAttrs(el, ["name", "surname"]);
  const texts = childTexts(el, ["email", "webpage", "notes"]);
  requireTexts(el, texts, ["email", "webpage", "notes"]);
  return {
    name: el.attrs.get("name")!,
    surname: el.attrs.get("surname")!,
    email: texts.get("email")!,
    webpage: texts.get("webpage")!,
    notes: texts.get("notes")!,
  };
}

function parseDataset(el: XmlElement): Dataset {
  checkAttrs(el, ["name"]);
  const texts = childTexts(el, ["notes", "content"]);
  requireTexts(el, texts, ["notes", "content"]);
  return { name: el.attrs.get("name")!, notes: texts.get("notes")!, content: texts.get("content")! };
}

function intAttr(el: XmlElement, key: string): number {
  const value = el.attrs.get(key)!;
  if (!/^[0-9]+$/.test(value)) {
    fail("BadAttribute", el, `attribute '${key}' must be a nonnegative integer, got '${value}'`);
  }
  return Number(value);
}

function mediaOf(el: XmlElement): { mediaType: string; payload: Uint8Array } {
  try {
    return decodeDataUri(textOf(el));
  } catch (error) {
    fail("BadAttribute", el, `bad data URI: ${(error as Error).message}`);
  }
}

function parseImage(el: XmlElement): ImageRecord {
  checkAttrs(el, ["name"], ["url"]);
  requireElementOnly(el);
  const seen = new Map<string, XmlElement>();
  for (const child of el.children) {
    const local = checkChild(el, child, ["notes", "data", "thumbnail"]);
    if (seen.has(local)) fail("BadAttribute", child, `duplicate element <${local}> inside <image>`);
    seen.set(local, child);
  }
  const missing = ["notes", "data", "thumbnail"].filter((n) => !seen.has(n));
  if (missing.length) fail("BadAttribute", el, `<image> is missing required [${missing.join(", ")}]`);
  const data = seen.get("data")!;
  const thumb = seen.get("thumbnail")!;
  checkAttrs(data, ["width", "height"]);
  checkAttrs(thumb, ["width", "height"]);
  const image: ImageRecord = {
    name: el.attrs.get("name")!,
    notes: textOf(seen.get("notes")!),
    relatedUrl: el.attrs.get("url") ?? null,
    full: mediaOf(data),
    thumbnail: mediaOf(thumb),
    fullWidth: intAttr(data, "width"),
    fullHeight: intAttr(data, "height"),
    thumbWidth: intAttr(thumb, "width"),
    thumbHeight: intAttr(thumb, "height"),
  };
  try {
    checkImage(image);
  } catch (error) {
    if (error instanceof InvalidEntry) fail("BadAttribute", el, error.message);
    throw error;
  }
  return image;
}

function parseVideo(el: XmlElement): VideoRecord {
  checkAttrs(el, ["name"]);
  requireElementOnly(el);
  let notes: string | null = null;
  let media: VideoRecord["media"] = null;
  for (const child of el.children) {
    const local = checkChild(el, child, ["notes", "data"]);
    if (local === "notes") {
      if (notes !== null) fail("BadAttribute", child, "duplicate element <notes> inside <video>");
      notes = textOf(child);
    } else {
      if (media !== null) fail("BadAttribute", child, "duplicate element <data> inside <video>");
      checkAttrs(child, []);
      media = mediaOf(child);
    }
  }
  if (notes === null) fail("BadAttribute", el, "<video> is missing required [notes]");
  return { name: el.attrs.get("name")!, notes, media };
}

function parseTodo(el: XmlElement): TodoItem {
  checkAttrs(el, [], ["due", "done"]);
  const done = el.attrs.get("done") ?? "false";
  if (done !== "true" && done !== "false") {
    fail("BadAttribute", el, `todo done must be true/false, got '${done}'`);
  }
  const due = el.attrs.get("due") ?? null;
  if (due !== null && !isCalendarDate(due)) {
    fail("BadAttribute", el, `todo due date must be YYYY-MM-DD, got '${due}'`);
  }
  return { text: textOf(el), dueDate: due, done: done === "true" };
}
