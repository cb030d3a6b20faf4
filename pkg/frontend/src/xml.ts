/**
 * Minimal namespace-aware XML reader for SLN documents.
 *
 * Handles exactly what well-formed notebook files (and near-misses worth
 * diagnosing) need: prolog, elements, attributes, character data, entity
 * and character references, comments, CDATA, and namespace resolution.
 * No DTDs, no processing instructions beyond the declaration.
 *
 * Deliberately independent of DOMParser so the same code runs in the
 * browser and under node, and so error positions are ours to report.
 */

export class XmlError extends Error {
  constructor(message: string, public line: number, public column: number) {
    super(`${message} at ${line}:${column}`);
  }
}

export interface XmlElement {
  /** Resolved namespace URI ("" when unqualified). */
  ns: string;
  local: string;
  /** Attribute key: local name, or "<uri> <local>" for prefixed attributes. */
  attrs: Map<string, string>;
  children: XmlElement[];
  /** Concatenated character data directly inside this element. */
  text: string;
  line: number;
  column: number;
}

interface Scope {
  default: string;
  prefixes: Map<string, string>;
}

const NAME_RE = /^[A-Za-z_][\w.\-]*(:[A-Za-z_][\w.\-]*)?$/;

export function parseXml(source: string): { root: XmlElement; encoding: string | null } {
  const scanner = new Scanner(source);
  const encoding = scanner.prolog();
  const root = scanner.element([{ default: "", prefixes: new Map() }]);
  scanner.trailer();
  return { root, encoding };
}

class Scanner {
  private pos = 0;

  constructor(private src: string) {}

  private fail(message: string): never {
    let line = 1;
    let last = -1;
    for (let i = 0; i < this.pos && i < this.src.length; i++) {
      if (this.src[i] === "\n") {
        line++;
        last = i;
      }
    }
    throw new XmlError(message, line, this.pos - last);
  }

  private ws(): void {
    while (this.pos < this.src.length && " \t\r\n".includes(this.src[this.pos])) this.pos++;
  }

  private literal(text: string): boolean {
    if (this.src.startsWith(text, this.pos)) {
      this.pos += text.length;
      return true;
    }
    return false;
  }

  private until(terminator: string, what: string): string {
    const end = this.src.indexOf(terminator, this.pos);
    if (end < 0) this.fail(`unterminated ${what}`);
    const body = this.src.slice(this.pos, end);
    this.pos = end + terminator.length;
    return body;
  }

  prolog(): string | null {
    let encoding: string | null = null;
    if (this.literal("﻿")) { /* utf-8 BOM already decoded upstream */ }
    if (this.literal("<?xml")) {
      const decl = this.until("?>", "XML declaration");
      const match = /encoding\s*=\s*["']([^"']*)["']/.exec(decl);
      if (match) encoding = match[1];
    }
    this.misc();
    return encoding;
  }

  /** Comments, whitespace, doctype between prolog/elements. */
  private misc(): void {
    for (;;) {
      this.ws();
      if (this.src.startsWith("<!--", this.pos)) {
        this.pos += 4;
        this.until("-->", "comment");
      } else if (this.src.startsWith("<!DOCTYPE", this.pos)) {
        this.until(">", "doctype");
      } else {
        return;
      }
    }
  }

  trailer(): void {
    this.misc();
    if (this.pos !== this.src.length) this.fail("content after document element");
  }

  element(scopes: Scope[]): XmlElement {
    if (!this.literal("<")) this.fail("expected element");
    const startPos = this.pos;
    const name = this.name();
    const rawAttrs: Array<[string, string]> = [];
    let selfClosing = false;
    for (;;) {
      const beforeWs = this.pos;
      this.ws();
      if (this.literal("/>")) {
        selfClosing = true;
        break;
      }
      if (this.literal(">")) break;
      if (this.pos === beforeWs) this.fail("malformed start tag");
      const attrName = this.name();
      this.ws();
      if (!this.literal("=")) this.fail(`attribute ${attrName} missing value`);
      this.ws();
      rawAttrs.push([attrName, this.attrValue()]);
    }

    const scope: Scope = {
      default: scopes[scopes.length - 1].default,
      prefixes: new Map(scopes[scopes.length - 1].prefixes),
    };
    const attrs = new Map<string, string>();
    for (const [key, value] of rawAttrs) {
      if (key === "xmlns") scope.default = value;
      else if (key.startsWith("xmlns:")) scope.prefixes.set(key.slice(6), value);
    }
    for (const [key, value] of rawAttrs) {
      if (key === "xmlns" || key.startsWith("xmlns:")) continue;
      const colon = key.indexOf(":");
      if (colon < 0) {
        if (attrs.has(key)) this.fail(`duplicate attribute ${key}`);
        attrs.set(key, value);
      } else {
        const prefix = key.slice(0, colon);
        const uri = scope.prefixes.get(prefix);
        if (uri === undefined) this.fail(`undeclared attribute prefix ${prefix}`);
        attrs.set(`${uri} ${key.slice(colon + 1)}`, value);
      }
    }

    const { ns, local } = this.resolve(name, scope);
    const element: XmlElement = {
      ns, local, attrs, children: [], text: "",
      ...this.position(startPos),
    };
    if (selfClosing) return element;

    for (;;) {
      const chunkStart = this.pos;
      const lt = this.src.indexOf("<", this.pos);
      if (lt < 0) this.fail(`unclosed element ${name}`);
      if (lt > chunkStart) {
        const chunk = this.src.slice(chunkStart, lt).replace(/\r\n?/g, "\n");
        element.text += this.decodeText(chunk);
        this.pos = lt;
      }
      if (this.src.startsWith("</", this.pos)) {
        this.pos += 2;
        const closing = this.name();
        this.ws();
        if (!this.literal(">")) this.fail("malformed end tag");
        if (closing !== name) this.fail(`mismatched end tag ${closing}, expected ${name}`);
        return element;
      }
      if (this.src.startsWith("<!--", this.pos)) {
        this.pos += 4;
        this.until("-->", "comment");
        continue;
      }
      if (this.src.startsWith("<![CDATA[", this.pos)) {
        this.pos += 9;
        element.text += this.until("]]>", "CDATA section").replace(/\r\n?/g, "\n");
        continue;
      }
      scopes.push(scope);
      element.children.push(this.element(scopes));
      scopes.pop();
    }
  }

  private position(at: number): { line: number; column: number } {
    let line = 1;
    let last = -1;
    for (let i = 0; i < at; i++) {
      if (this.src[i] === "\n") {
        line++;
        last = i;
      }
    }
    return { line, column: at - last };
  }

  private resolve(name: string, scope: Scope): { ns: string; local: string } {
    const colon = name.indexOf(":");
    if (colon < 0) return { ns: scope.default, local: name };
    const prefix = name.slice(0, colon);
    const uri = scope.prefixes.get(prefix);
    if (uri === undefined) this.fail(`undeclared element prefix ${prefix}`);
    return { ns: uri, local: name.slice(colon + 1) };
  }

  private name(): string {
    const start = this.pos;
    while (this.pos < this.src.length && !'= \t\r\n/><"\''.includes(this.src[this.pos])) {
      this.pos++;
    }
    const name = this.src.slice(start, this.pos);
    if (!NAME_RE.test(name)) {
      this.pos = start;
      this.fail(`malformed name ${JSON.stringify(name)}`);
    }
    return name;
  }

  private attrValue(): string {
    const quote = this.src[this.pos];
    if (quote !== '"' && quote !== "'") this.fail("attribute value must be quoted");
    this.pos++;
    const raw = this.until(quote, "attribute value");
    if (raw.includes("<")) this.fail("'<' in attribute value");
    // Attribute-value normalization: literal whitespace becomes spaces
    // (a CRLF pair is one line end, so one space); character references
    // keep their exact characters.
    return this.decodeText(raw.replace(/\r\n/g, " ").replace(/[\t\r\n]/g, " "));
  }

  private decodeText(raw: string): string {
    if (raw.includes("]]>")) this.fail("']]>' in character data");
    return raw.replace(/&([^;&]*);?/g, (whole, body: string) => {
      if (!whole.endsWith(";")) this.fail("unterminated entity reference");
      switch (body) {
        case "amp": return "&";
        case "lt": return "<";
        case "gt": return ">";
        case "quot": return '"';
        case "apos": return "'";
      }
      if (body.startsWith("#x") || body.startsWith("#X")) {
        const code = parseInt(body.slice(2), 16);
        if (Number.isNaN(code)) this.fail(`bad character reference &${body};`);
        return String.fromCodePoint(code);
      }
      if (body.startsWith("#")) {
        const code = parseInt(body.slice(1), 10);
        if (Number.isNaN(code)) this.fail(`bad character reference &${body};`);
        return String.fromCodePoint(code);
      }
      return this.fail(`unknown entity &${body};`);
    });
  }
}
