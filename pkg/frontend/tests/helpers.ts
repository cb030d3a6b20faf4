import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { StorageLike } from "../src/channel.js";

const here = dirname(fileURLToPath(import.meta.url));

/** Shared sample document, also used by the primary toolkit's tests. */
export const SAMPLE_PATH = join(here, "..", "..", "tests", "data", "sample_soho.sln");

export function sampleBytes(): Uint8Array {
  return new Uint8Array(readFileSync(SAMPLE_PATH));
}

export const PKG_ROOT = join(here, "..", "..");

/** Minimal in-memory localStorage double. */
export class FakeStorage implements StorageLike {
  private map = new Map<string, string>();

  getItem(key: string): string | null {
    return this.map.has(key) ? this.map.get(key)! : null;
  }

  setItem(key: string, value: string): void {
    this.map.set(key, String(value));
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  get size(): number {
    return this.map.size;
  }

  keys(): string[] {
    return [...this.map.keys()];
  }
}

export function text(data: Uint8Array): string {
  return new TextDecoder().decode(data);
}

export function encode(textData: string): Uint8Array {
  return new TextEncoder().encode(textData);
}
