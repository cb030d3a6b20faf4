/**
 * Client-side storage channel between the main window and the Image
 * Editor window.
 *
 * Browsers disagree on storage events, so the consumer POLLS (interval
 * <= 250 ms) instead of listening.  Large payloads are split into chunks
 * of bounded size so every stored value stays far under the ~10 MB
 * storage floor.  Writes put chunks first and the metadata key last, so a
 * poll never observes a half-written handoff; the consumer deletes all
 * keys on pickup, which makes consumption exactly-once.  A handoff left
 * by a closed editor is discarded.
 */

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export const CHANNEL_PREFIX = "sln.editor.";
const HANDOFF_KEY = `${CHANNEL_PREFIX}handoff`;
const CHUNK_KEY = `${CHANNEL_PREFIX}chunk.`;
export const CHUNK_SIZE = 1 << 20; // chars of data-URI text per chunk
export const POLL_INTERVAL_MS = 200;

export interface EditorImage {
  name: string;
  notes: string;
  width: number;
  height: number;
  thumbWidth: number;
  thumbHeight: number;
  /** Full-size image and thumbnail as data URIs. */
  fullUri: string;
  thumbUri: string;
}

interface HandoffMeta {
  id: string;
  op: "ImageReady" | "EditorClosed";
  name?: string;
  notes?: string;
  width?: number;
  height?: number;
  thumbWidth?: number;
  thumbHeight?: number;
  fullChunks?: number;
  thumbChunks?: number;
}

export type Handoff =
  | { op: "ImageReady"; image: EditorImage }
  | { op: "EditorClosed" };

let sequence = 0;

function splitChunks(text: string): string[] {
  const chunks: string[] = [];
  for (let i = 0; i < text.length; i += CHUNK_SIZE) {
    chunks.push(text.slice(i, i + CHUNK_SIZE));
  }
  return chunks.length ? chunks : [""];
}

/** True when a previous handoff is still waiting to be consumed. */
export function channelBusy(storage: StorageLike): boolean {
  return storage.getItem(HANDOFF_KEY) !== null;
}

/**
 * Editor side: publish a finished image.  Returns false (and writes
 * nothing) while the previous handoff is unconsumed; retry after a poll
 * interval.
 */
export function publishImage(storage: StorageLike, image: EditorImage): boolean {
  if (channelBusy(storage)) return false;
  const fullChunks = splitChunks(image.fullUri);
  const thumbChunks = splitChunks(image.thumbUri);
  fullChunks.forEach((chunk, i) => storage.setItem(`${CHUNK_KEY}full.${i}`, chunk));
  thumbChunks.forEach((chunk, i) => storage.setItem(`${CHUNK_KEY}thumb.${i}`, chunk));
  const meta: HandoffMeta = {
    id: `${Date.now()}-${sequence++}`,
    op: "ImageReady",
    name: image.name,
    notes: image.notes,
    width: image.width,
    height: image.height,
    thumbWidth: image.thumbWidth,
    thumbHeight: image.thumbHeight,
    fullChunks: fullChunks.length,
    thumbChunks: thumbChunks.length,
  };
  storage.setItem(HANDOFF_KEY, JSON.stringify(meta)); // meta last: commit point
  return true;
}

/** Editor side: signal that the window went away without committing. */
export function publishEditorClosed(storage: StorageLike): void {
  clearChannel(storage);
  storage.setItem(HANDOFF_KEY, JSON.stringify({ id: `${Date.now()}-${sequence++}`, op: "EditorClosed" }));
}

/**
 * Main-window side: consume a pending handoff, if any.  All channel keys
 * are removed before returning, so each handoff is delivered exactly once.
 */
export function takeHandoff(storage: StorageLike): Handoff | null {
  const rawMeta = storage.getItem(HANDOFF_KEY);
  if (rawMeta === null) return null;
  let meta: HandoffMeta;
  try {
    meta = JSON.parse(rawMeta) as HandoffMeta;
  } catch {
    clearChannel(storage);
    return null;
  }
  if (meta.op === "EditorClosed") {
    clearChannel(storage);
    return { op: "EditorClosed" };
  }
  const fullUri = readChunks(storage, "full", meta.fullChunks ?? 0);
  const thumbUri = readChunks(storage, "thumb", meta.thumbChunks ?? 0);
  clearChannel(storage);
  if (fullUri === null || thumbUri === null) return null; // torn write: discard
  return {
    op: "ImageReady",
    image: {
      name: meta.name ?? "image",
      notes: meta.notes ?? "",
      width: meta.width ?? 0,
      height: meta.height ?? 0,
      thumbWidth: meta.thumbWidth ?? 0,
      thumbHeight: meta.thumbHeight ?? 0,
      fullUri,
      thumbUri,
    },
  };
}

function readChunks(storage: StorageLike, kind: string, count: number): string | null {
  const parts: string[] = [];
  for (let i = 0; i < count; i++) {
    const chunk = storage.getItem(`${CHUNK_KEY}${kind}.${i}`);
    if (chunk === null) return null;
    parts.push(chunk);
  }
  return parts.join("");
}

export function clearChannel(storage: StorageLike): void {
  storage.removeItem(HANDOFF_KEY);
  for (const kind of ["full", "thumb"]) {
    for (let i = 0; ; i++) {
      const key = `${CHUNK_KEY}${kind}.${i}`;
      if (storage.getItem(key) === null) break;
      storage.removeItem(key);
    }
  }
}

/**
 * Start polling for editor handoffs.  Returns a stop function.  The timer
 * type is browser/node agnostic.
 */
export function pollHandoffs(
  storage: StorageLike,
  onImage: (image: EditorImage) => void,
  onClosed: () => void = () => {},
  intervalMs: number = POLL_INTERVAL_MS,
): () => void {
  const timer = setInterval(() => {
    const handoff = takeHandoff(storage);
    if (handoff === null) return;
    if (handoff.op === "ImageReady") onImage(handoff.image);
    else onClosed();
  }, intervalMs);
  return () => clearInterval(timer);
}
