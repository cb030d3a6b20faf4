/**
 * RFC 2397 data URIs with standard padded base64, no whitespace.
 *
 * Self-contained base64 over Uint8Array so the same code runs in the
 * browser and under node without Buffer/atob.
 */

import { isMediaType } from "./model.js";

const ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

const REVERSE = new Int8Array(128).fill(-1);
for (let i = 0; i < ALPHABET.length; i++) REVERSE[ALPHABET.charCodeAt(i)] = i;

export class MalformedDataUri extends Error {}

export function base64Encode(data: Uint8Array): string {
  const parts: string[] = [];
  let i = 0;
  for (; i + 2 < data.length; i += 3) {
    const n = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    parts.push(
      ALPHABET[n >> 18], ALPHABET[(n >> 12) & 63], ALPHABET[(n >> 6) & 63], ALPHABET[n & 63],
    );
  }
  const rest = data.length - i;
  if (rest === 1) {
    const n = data[i] << 16;
    parts.push(ALPHABET[n >> 18], ALPHABET[(n >> 12) & 63], "=", "=");
  } else if (rest === 2) {
    const n = (data[i] << 16) | (data[i + 1] << 8);
    parts.push(ALPHABET[n >> 18], ALPHABET[(n >> 12) & 63], ALPHABET[(n >> 6) & 63], "=");
  }
  return parts.join("");
}

export function base64Decode(text: string): Uint8Array {
  if (text.length % 4 !== 0) throw new MalformedDataUri("base64 length not a multiple of 4");
  let pads = 0;
  if (text.endsWith("==")) pads = 2;
  else if (text.endsWith("=")) pads = 1;
  const body = text.slice(0, text.length - pads);
  if (body.includes("=")) throw new MalformedDataUri("padding inside base64 payload");
  const out = new Uint8Array((text.length / 4) * 3 - pads);
  let w = 0;
  let buffer = 0;
  let bits = 0;
  for (let i = 0; i < body.length; i++) {
    const code = body.charCodeAt(i);
    const value = code < 128 ? REVERSE[code] : -1;
    if (value < 0) {
      throw new MalformedDataUri(`character ${JSON.stringify(body[i])} outside the base64 alphabet`);
    }
    buffer = (buffer << 6) | value;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      if (w < out.length) out[w++] = (buffer >> bits) & 0xff;
      else if (((buffer >> bits) & 0xff) !== 0) {
        throw new MalformedDataUri("non-canonical trailing bits");
      }
    }
  }
  if (bits > 0 && (buffer & ((1 << bits) - 1)) !== 0) {
    throw new MalformedDataUri("non-canonical trailing bits");
  }
  return out;
}

export function encodeDataUri(mediaType: string, data: Uint8Array): string {
  if (!isMediaType(mediaType)) {
    throw new MalformedDataUri(`malformed media type: ${JSON.stringify(mediaType)}`);
  }
  return `data:${mediaType};base64,${base64Encode(data)}`;
}

export function decodeDataUri(text: string): { mediaType: string; payload: Uint8Array } {
  const match = /^data:([^;,]+);base64,(.*)$/s.exec(text);
  if (!match) throw new MalformedDataUri("not a base64 data URI");
  const [, mediaType, body] = match;
  if (!isMediaType(mediaType)) {
    throw new MalformedDataUri(`malformed media type: ${JSON.stringify(mediaType)}`);
  }
  const payload = base64Decode(body);
  if (base64Encode(payload) !== body) {
    throw new MalformedDataUri("non-canonical base64 payload");
  }
  return { mediaType, payload };
}
