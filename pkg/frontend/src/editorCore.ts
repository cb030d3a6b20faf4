/**
 * Editor math and commit protocol, kept free of canvas/DOM so it is
 * testable anywhere.  The editor window supplies pixels (via canvas);
 * this module decides dimensions and speaks the storage channel.
 */

import { EditorImage, publishImage, StorageLike } from "./channel.js";
import { MAX_IMAGE_DIM } from "./model.js";

export const THUMBNAIL_MAX_SIDE = 128;
export const SCALE_RATIOS = [1, 2, 4, 8] as const;
export type ScaleRatio = (typeof SCALE_RATIOS)[number];

/** Output size of a 1:k reduction: floor with a 1px floor. */
export function scaledSize(width: number, height: number, k: ScaleRatio) {
  return {
    width: Math.max(1, Math.floor(width / k)),
    height: Math.max(1, Math.floor(height / k)),
  };
}

/** Thumbnail size: longest side <= 128, aspect preserved to within 1 px. */
export function thumbnailSize(width: number, height: number) {
  const longest = Math.max(width, height);
  if (longest <= THUMBNAIL_MAX_SIDE) return { width, height };
  const ratio = THUMBNAIL_MAX_SIDE / longest;
  return {
    width: Math.max(1, Math.round(width * ratio)),
    height: Math.max(1, Math.round(height * ratio)),
  };
}

export function fitsEditor(width: number, height: number): boolean {
  return width >= 1 && height >= 1 && width <= MAX_IMAGE_DIM && height <= MAX_IMAGE_DIM;
}

export interface CommitRequest {
  name: string;
  notes: string;
  /** Dimensions of the (possibly cropped, scaled) image being committed. */
  width: number;
  height: number;
  fullUri: string;
  thumbUri: string;
}

/**
 * Publish a finished image over the storage channel.  Returns true when
 * accepted; false when the channel still holds an unconsumed handoff (the
 * caller should retry after a poll interval).
 */
export function commitImage(storage: StorageLike, request: CommitRequest): boolean {
  if (!fitsEditor(request.width, request.height)) {
    throw new Error(
      `image ${request.width}x${request.height} outside the editor's 1..${MAX_IMAGE_DIM} bound`,
    );
  }
  const thumb = thumbnailSize(request.width, request.height);
  const image: EditorImage = {
    name: request.name,
    notes: request.notes,
    width: request.width,
    height: request.height,
    thumbWidth: thumb.width,
    thumbHeight: thumb.height,
    fullUri: request.fullUri,
    thumbUri: request.thumbUri,
  };
  return publishImage(storage, image);
}
