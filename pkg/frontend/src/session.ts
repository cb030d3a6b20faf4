/**
 * Session state for the single-page notebook: the loaded file, the active
 * website entry, and edits against it.  Everything happens in memory;
 * loading and saving never touch the network.
 */

import { EditorImage } from "./channel.js";
import { decodeDataUri } from "./datauri.js";
import {
  Contact,
  Dataset,
  ImageRecord,
  Notebook,
  Note,
  RelatedUrl,
  TodoItem,
  VideoRecord,
  WebsiteEntry,
  checkEntry,
  newNotebook,
} from "./model.js";
import { parseNotebook, SlnParseError } from "./parse.js";
import { SearchIndex } from "./search.js";
import { serializeNotebookBytes } from "./serialize.js";
import { Finding, validate } from "./validate.js";

export type LoadResult =
  | { ok: true; session: Session }
  | { ok: false; findings: Finding[]; error?: string };

export class Session {
  notebook: Notebook;
  activeIndex: number;
  dirty = false;
  private index: SearchIndex;

  constructor(notebook: Notebook) {
    this.notebook = notebook;
    // On load the first website entry is the active one.
    this.activeIndex = notebook.websites.length ? 0 : -1;
    this.index = new SearchIndex(notebook);
  }

  static blank(): Session {
    return new Session(newNotebook());
  }

  /** Parse user-selected file bytes; invalid files yield findings, not content. */
  static load(bytes: Uint8Array): LoadResult {
    try {
      const report = validate(bytes);
      if (!report.valid) return { ok: false, findings: report.findings };
      return { ok: true, session: new Session(parseNotebook(bytes)) };
    } catch (error) {
      if (error instanceof SlnParseError) {
        return { ok: false, findings: [], error: error.message };
      }
      throw error;
    }
  }

  /** Canonical bytes for download; output revalidates clean by construction. */
  saveBytes(): Uint8Array {
    return serializeNotebookBytes(this.notebook);
  }

  get active(): WebsiteEntry | null {
    return this.activeIndex >= 0 ? this.notebook.websites[this.activeIndex] : null;
  }

  setActive(index: number): void {
    if (index < 0 || index >= this.notebook.websites.length) {
      throw new RangeError(`no website entry ${index}`);
    }
    this.activeIndex = index;
  }

  search(text: string) {
    return this.index.query(text);
  }

  private touch(): void {
    this.dirty = true;
    this.index = new SearchIndex(this.notebook);
  }

  addWebsite(entry: WebsiteEntry): void {
    checkEntry(entry);
    this.notebook.websites.push(entry);
    if (this.activeIndex < 0) this.activeIndex = 0;
    this.touch();
  }

  private requireActive(): WebsiteEntry {
    const active = this.active;
    if (!active) throw new Error("no active website entry");
    return active;
  }

  updateActive(fields: Partial<Pick<WebsiteEntry, "name" | "location" | "purpose" | "date">>): void {
    const active = this.requireActive();
    const updated = { ...active, ...fields };
    checkEntry(updated);
    this.notebook.websites[this.activeIndex] = updated;
    this.touch();
  }

  deleteActive(): void {
    this.requireActive();
    this.notebook.websites.splice(this.activeIndex, 1);
    this.activeIndex = this.notebook.websites.length ? 0 : -1;
    this.touch();
  }

  // Tab row CRUD; every mutation revalidates the whole entry so bad rows
  // never land in the model.

  private editRows<K extends CollectionKey>(key: K, edit: (rows: WebsiteEntry[K]) => void): void {
    const active = this.requireActive();
    const updated = { ...active, [key]: [...active[key]] };
    edit(updated[key]);
    checkEntry(updated);
    this.notebook.websites[this.activeIndex] = updated;
    this.touch();
  }

  addRelated(row: RelatedUrl): void { this.editRows("related", (r) => { r.push(row); }); }
  addContact(row: Contact): void { this.editRows("contacts", (r) => { r.push(row); }); }
  addDataset(row: Dataset): void { this.editRows("datasets", (r) => { r.push(row); }); }
  addImage(row: ImageRecord): void { this.editRows("images", (r) => { r.push(row); }); }
  addVideo(row: VideoRecord): void { this.editRows("videos", (r) => { r.push(row); }); }
  addTodo(row: TodoItem): void { this.editRows("todos", (r) => { r.push(row); }); }
  addNote(row: Note): void { this.editRows("otherNotes", (r) => { r.push(row); }); }

  editRow<K extends CollectionKey>(key: K, index: number, row: WebsiteEntry[K][number]): void {
    this.editRows(key, (rows) => {
      if (index < 0 || index >= rows.length) throw new RangeError(`no row ${index}`);
      rows[index] = row;
    });
  }

  deleteRow(key: CollectionKey, index: number): void {
    this.editRows(key, (rows) => {
      if (index < 0 || index >= rows.length) throw new RangeError(`no row ${index}`);
      rows.splice(index, 1);
    });
  }

  /** Append the record handed over by the Image Editor window. */
  applyEditorImage(image: EditorImage): void {
    const full = decodeDataUri(image.fullUri);
    const thumb = decodeDataUri(image.thumbUri);
    this.addImage({
      name: image.name,
      notes: image.notes,
      relatedUrl: null,
      full: { mediaType: full.mediaType, payload: full.payload },
      thumbnail: { mediaType: thumb.mediaType, payload: thumb.payload },
      fullWidth: image.width,
      fullHeight: image.height,
      thumbWidth: image.thumbWidth,
      thumbHeight: image.thumbHeight,
    });
  }
}

type CollectionKey =
  | "related" | "contacts" | "datasets" | "images" | "videos" | "todos" | "otherNotes";
