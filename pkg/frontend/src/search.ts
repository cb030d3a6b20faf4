/**
 * Instant search, same contract as the batch toolkit: case-folded
 * substring match over name/location/purpose, cheap enough to run on
 * every keystroke; appending characters only narrows the result set.
 */

import { Notebook } from "./model.js";

export interface Hit {
  entry: number;
  field: "name" | "location" | "purpose";
  offset: number;
}

const FIELDS = ["name", "location", "purpose"] as const;

function fold(text: string): string {
  // toLowerCase covers the UI languages; ß needs the explicit ss fold to
  // match the primary implementation's full case folding.
  return text.toLowerCase().replace(/ß/g, "ss");
}

export class SearchIndex {
  private rows: Array<[string, string, string]>;

  constructor(nb: Notebook) {
    this.rows = nb.websites.map((site) => [
      fold(site.name), fold(site.location), fold(site.purpose),
    ]);
  }

  query(text: string): Hit[] {
    const needle = fold(text);
    const hits: Hit[] = [];
    this.rows.forEach((row, entry) => {
      for (let i = 0; i < FIELDS.length; i++) {
        const offset = row[i].indexOf(needle);
        if (offset >= 0) {
          hits.push({ entry, field: FIELDS[i], offset });
          return;
        }
      }
    });
    return hits;
  }
}

/** Keep rows whose fields contain the keyword (case-insensitive). */
export function filterRows<T extends Record<string, string>>(rows: T[], keyword: string): T[] {
  const needle = fold(keyword);
  return rows.filter((row) => Object.values(row).some((v) => fold(v).includes(needle)));
}
