/**
 * In-memory form of one .sln notebook file.
 *
 * This mirrors the wire format's structure: a notebook is an ordered run
 * of website entries, each carrying the seven tab collections.  Dates stay
 * as YYYY-MM-DD strings (no timezone surprises); media payloads are raw
 * bytes plus a MIME type.
 */

export const SLN_NAMESPACE = "http://umbra.nascom.nasa.gov/";
export const XSI_NAMESPACE = "http://www.w3.org/2001/XMLSchema-instance";
export const SCHEMA_URL = "http://umbra.nascom.nasa.gov/sln/schema/sln.xsd";
export const MAX_IMAGE_DIM = 2048;

export interface MediaBlob {
  mediaType: string;
  payload: Uint8Array;
}

export interface RelatedUrl {
  value: string;
  notes: string;
}

export interface Contact {
  name: string;
  surname: string;
  email: string;
  webpage: string;
  notes: string;
}

export interface Dataset {
  name: string;
  notes: string;
  content: string;
}

export interface ImageRecord {
  name: string;
  notes: string;
  relatedUrl: string | null;
  full: MediaBlob;
  thumbnail: MediaBlob;
  fullWidth: number;
  fullHeight: number;
  thumbWidth: number;
  thumbHeight: number;
}

export interface VideoRecord {
  name: string;
  notes: string;
  media: MediaBlob | null;
}

export interface TodoItem {
  text: string;
  dueDate: string | null;
  done: boolean;
}

export interface Note {
  text: string;
}

export interface WebsiteEntry {
  name: string;
  location: string;
  date: string;
  purpose: string;
  related: RelatedUrl[];
  contacts: Contact[];
  datasets: Dataset[];
  images: ImageRecord[];
  videos: VideoRecord[];
  todos: TodoItem[];
  otherNotes: Note[];
}

export interface Notebook {
  websites: WebsiteEntry[];
  schemaLocation: string | null;
}

export class InvalidEntry extends Error {}

const DATE_RE = /^\d{4}-\d{2}-\d{2}$/;

/** True iff text is YYYY-MM-DD and names a real calendar day. */
export function isCalendarDate(text: string): boolean {
  if (!DATE_RE.test(text)) return false;
  const [year, month, day] = text.split("-").map(Number);
  if (month < 1 || month > 12 || day < 1) return false;
  const lengths = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
  const leap = (year % 4 === 0 && year % 100 !== 0) || year % 400 === 0;
  return day <= (month === 2 && leap ? 29 : lengths[month - 1]);
}

const MIME_RE = /^[-!#$%&'*+.^_`|~0-9A-Za-z]+\/[-!#$%&'*+.^_`|~0-9A-Za-z]+$/;

export function isMediaType(text: string): boolean {
  return MIME_RE.test(text);
}

export function newNotebook(): Notebook {
  return { websites: [], schemaLocation: SCHEMA_URL };
}

export function newWebsiteEntry(
  name: string,
  location: string,
  date: string,
  purpose = "",
): WebsiteEntry {
  const entry: WebsiteEntry = {
    name, location, date, purpose,
    related: [], contacts: [], datasets: [], images: [],
    videos: [], todos: [], otherNotes: [],
  };
  checkEntry(entry);
  return entry;
}

/** Throws InvalidEntry unless the entry satisfies the model invariants. */
export function checkEntry(entry: WebsiteEntry): void {
  if (!entry.name) throw new InvalidEntry("website name must not be empty");
  if (!isCalendarDate(entry.date)) {
    throw new InvalidEntry(`website date must be YYYY-MM-DD, got ${JSON.stringify(entry.date)}`);
  }
  for (const rel of entry.related) {
    if (!rel.value) throw new InvalidEntry("related URL value must not be empty");
  }
  for (const contact of entry.contacts) {
    if (!contact.name || !contact.surname) {
      throw new InvalidEntry("contact name and surname are required");
    }
  }
  for (const ds of entry.datasets) {
    if (!ds.name) throw new InvalidEntry("dataset name must not be empty");
  }
  for (const image of entry.images) checkImage(image);
  for (const video of entry.videos) {
    if (!video.name) throw new InvalidEntry("video name must not be empty");
  }
  for (const todo of entry.todos) {
    if (!todo.text) throw new InvalidEntry("todo text must not be empty");
    if (todo.dueDate !== null && !isCalendarDate(todo.dueDate)) {
      throw new InvalidEntry(`todo due date must be YYYY-MM-DD, got ${JSON.stringify(todo.dueDate)}`);
    }
  }
}

export function checkImage(image: ImageRecord): void {
  if (!image.name) throw new InvalidEntry("image name must not be empty");
  const { fullWidth, fullHeight, thumbWidth, thumbHeight } = image;
  for (const dim of [fullWidth, fullHeight, thumbWidth, thumbHeight]) {
    if (!Number.isInteger(dim) || dim < 1) {
      throw new InvalidEntry("image dimensions must be positive integers");
    }
  }
  if (fullWidth > MAX_IMAGE_DIM || fullHeight > MAX_IMAGE_DIM) {
    throw new InvalidEntry(`full image exceeds ${MAX_IMAGE_DIM}x${MAX_IMAGE_DIM}`);
  }
  if (thumbWidth > fullWidth || thumbHeight > fullHeight) {
    throw new InvalidEntry("thumbnail dimensions exceed the full image");
  }
}
