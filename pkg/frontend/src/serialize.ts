/**
 * Canonical serializer: identical output, byte for byte, for equal
 * notebooks.  utf-8 declaration, fixed element/attribute order, 2-space
 * indentation, LF line endings; CR and attribute whitespace travel as
 * character references so they survive XML normalization on re-read.
 */

import { encodeDataUri } from "./datauri.js";
import {
  Notebook,
  SLN_NAMESPACE,
  WebsiteEntry,
  XSI_NAMESPACE,
} from "./model.js";

function escText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/\r/g, "&#13;");
}

function escAttr(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/\r/g, "&#13;")
    .replace(/\n/g, "&#10;")
    .replace(/\t/g, "&#9;");
}

function attr(name: string, value: string): string {
  return ` ${name}="${escAttr(value)}"`;
}

function textElement(indent: string, name: string, text: string, attrs = ""): string {
  if (text) return `${indent}<${name}${attrs}>${escText(text)}</${name}>\n`;
  return `${indent}<${name}${attrs}/>\n`;
}

export function serializeNotebook(nb: Notebook): string {
  let rootAttrs = attr("xmlns", SLN_NAMESPACE);
  if (nb.schemaLocation !== null) {
    rootAttrs += attr("xmlns:xsi", XSI_NAMESPACE);
    rootAttrs += attr("xsi:schemaLocation", `${SLN_NAMESPACE} ${nb.schemaLocation}`);
  }
  const parts: string[] = ['<?xml version="1.0" encoding="utf-8"?>\n'];
  if (nb.websites.length === 0) {
    parts.push(`<sln${rootAttrs}/>\n`);
    return parts.join("");
  }
  parts.push(`<sln${rootAttrs}>\n`);
  for (const site of nb.websites) parts.push(websiteXml(site, "  "));
  parts.push("</sln>\n");
  return parts.join("");
}

export function serializeNotebookBytes(nb: Notebook): Uint8Array {
  return new TextEncoder().encode(serializeNotebook(nb));
}

function websiteXml(site: WebsiteEntry, ind: string): string {
  const sub = ind + "  ";
  const item = sub + "  ";
  const deep = item + "  ";
  const parts: string[] = [];
  parts.push(`${ind}<website${attr("name", site.name)}${attr("location", site.location)}>\n`);
  parts.push(textElement(sub, "purpose", site.purpose));
  parts.push(textElement(sub, "date", site.date));
  if (site.related.length) {
    parts.push(`${sub}<related>\n`);
    for (const rel of site.related) {
      parts.push(`${item}<reluri${attr("value", rel.value)}>\n`);
      parts.push(textElement(deep, "notes", rel.notes));
      parts.push(`${item}</reluri>\n`);
    }
    parts.push(`${sub}</related>\n`);
  }
  if (site.contacts.length) {
    parts.push(`${sub}<contacts>\n`);
    for (const c of site.contacts) {
      parts.push(`${item}<contact${attr("name", c.name)}${attr("surname", c.surname)}>\n`);
      parts.push(textElement(deep, "email", c.email));
      parts.push(textElement(deep, "webpage", c.webpage));
      parts.push(textElement(deep, "notes", c.notes));
      parts.push(`${item}</contact>\n`);
    }
    parts.push(`${sub}</contacts>\n`);
  }
  if (site.datasets.length) {
    parts.push(`${sub}<datasets>\n`);
    for (const ds of site.datasets) {
      parts.push(`${item}<dataset${attr("name", ds.name)}>\n`);
      parts.push(textElement(deep, "notes", ds.notes));
      parts.push(textElement(deep, "content", ds.content));
      parts.push(`${item}</dataset>\n`);
    }
    parts.push(`${sub}</datasets>\n`);
  }
  if (site.images.length) {
    parts.push(`${sub}<images>\n`);
    for (const img of site.images) {
      let attrs = attr("name", img.name);
      if (img.relatedUrl !== null) attrs += attr("url", img.relatedUrl);
      parts.push(`${item}<image${attrs}>\n`);
      parts.push(textElement(deep, "notes", img.notes));
      const fullDims = attr("width", String(img.fullWidth)) + attr("height", String(img.fullHeight));
      parts.push(textElement(deep, "data", encodeDataUri(img.full.mediaType, img.full.payload), fullDims));
      const thumbDims = attr("width", String(img.thumbWidth)) + attr("height", String(img.thumbHeight));
      parts.push(textElement(deep, "thumbnail", encodeDataUri(img.thumbnail.mediaType, img.thumbnail.payload), thumbDims));
      parts.push(`${item}</image>\n`);
    }
    parts.push(`${sub}</images>\n`);
  }
  if (site.videos.length) {
    parts.push(`${sub}<videos>\n`);
    for (const video of site.videos) {
      parts.push(`${item}<video${attr("name", video.name)}>\n`);
      parts.push(textElement(deep, "notes", video.notes));
      if (video.media !== null) {
        parts.push(textElement(deep, "data", encodeDataUri(video.media.mediaType, video.media.payload)));
      }
      parts.push(`${item}</video>\n`);
    }
    parts.push(`${sub}</videos>\n`);
  }
  if (site.todos.length) {
    parts.push(`${sub}<todos>\n`);
    for (const todo of site.todos) {
      let attrs = "";
      if (todo.dueDate !== null) attrs += attr("due", todo.dueDate);
      if (todo.done) attrs += attr("done", "true");
      parts.push(textElement(item, "todo", todo.text, attrs));
    }
    parts.push(`${sub}</todos>\n`);
  }
  if (site.otherNotes.length) {
    parts.push(`${sub}<othernotes>\n`);
    for (const note of site.otherNotes) parts.push(textElement(item, "note", note.text));
    parts.push(`${sub}</othernotes>\n`);
  }
  parts.push(`${ind}</website>\n`);
  return parts.join("");
}
