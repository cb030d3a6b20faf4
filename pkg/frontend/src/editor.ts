/**
 * Image Editor window: load a local photo, drag a crop rectangle, pick a
 * 1:1 / 1:2 / 1:4 / 1:8 scale, and hand the result (plus auto-thumbnail)
 * to the main window over the storage channel.  Runs in its own window;
 * the only link back is local storage.
 */

import { publishEditorClosed } from "./channel.js";
import {
  commitImage,
  scaledSize,
  ScaleRatio,
  thumbnailSize,
} from "./editorCore.js";
import { MAX_IMAGE_DIM } from "./model.js";

const app = document.querySelector<HTMLDivElement>("#editor")!;
app.innerHTML = `
  <header>
    <input type="file" id="file" accept="image/*">
    <label>scale
      <select id="scale">
        <option value="1">1:1</option>
        <option value="2">1:2</option>
        <option value="4">1:4</option>
        <option value="8">1:8</option>
      </select>
    </label>
    <input id="name" placeholder="image name" value="solar image">
    <input id="notes" placeholder="notes">
    <button id="commit" disabled>Save to notebook</button>
    <button id="reset" disabled>Clear selection</button>
    <span id="info">load an image (up to ${MAX_IMAGE_DIM}x${MAX_IMAGE_DIM})</span>
  </header>
  <div id="stage"><canvas id="view"></canvas></div>
`;

const view = document.querySelector<HTMLCanvasElement>("#view")!;
const info = document.querySelector<HTMLSpanElement>("#info")!;
const commitButton = document.querySelector<HTMLButtonElement>("#commit")!;
const resetButton = document.querySelector<HTMLButtonElement>("#reset")!;

let source: HTMLImageElement | null = null;
let crop: { x: number; y: number; w: number; h: number } | null = null;
let dragStart: { x: number; y: number } | null = null;
let committed = false;

document.querySelector<HTMLInputElement>("#file")!.addEventListener("change", (event) => {
  const file = (event.target as HTMLInputElement).files?.[0];
  if (!file) return;
  const reader = new FileReader();
  reader.onload = () => {
    const image = new Image();
    image.onload = () => {
      source = image;
      crop = null;
      draw();
      commitButton.disabled = false;
      resetButton.disabled = false;
      info.textContent = `${image.naturalWidth}x${image.naturalHeight}`;
    };
    image.src = reader.result as string;
  };
  reader.readAsDataURL(file);
});

function draw(): void {
  if (!source) return;
  view.width = source.naturalWidth;
  view.height = source.naturalHeight;
  const ctx = view.getContext("2d")!;
  ctx.drawImage(source, 0, 0);
  if (crop) {
    ctx.save();
    ctx.strokeStyle = "#ff5500";
    ctx.lineWidth = Math.max(2, view.width / 400);
    ctx.strokeRect(crop.x, crop.y, crop.w, crop.h);
    ctx.restore();
  }
}

function canvasPoint(event: MouseEvent): { x: number; y: number } {
  const rect = view.getBoundingClientRect();
  return {
    x: Math.round((event.clientX - rect.left) * (view.width / rect.width)),
    y: Math.round((event.clientY - rect.top) * (view.height / rect.height)),
  };
}

view.addEventListener("mousedown", (event) => { dragStart = canvasPoint(event); });
view.addEventListener("mousemove", (event) => {
  if (!dragStart) return;
  const point = canvasPoint(event);
  crop = {
    x: Math.min(dragStart.x, point.x),
    y: Math.min(dragStart.y, point.y),
    w: Math.max(1, Math.abs(point.x - dragStart.x)),
    h: Math.max(1, Math.abs(point.y - dragStart.y)),
  };
  draw();
});
view.addEventListener("mouseup", () => { dragStart = null; });

resetButton.addEventListener("click", () => {
  crop = null;
  draw();
});

commitButton.addEventListener("click", () => {
  if (!source) return;
  const region = crop ?? { x: 0, y: 0, w: source.naturalWidth, h: source.naturalHeight };
  const ratio = Number(
    document.querySelector<HTMLSelectElement>("#scale")!.value,
  ) as ScaleRatio;
  const out = scaledSize(region.w, region.h, ratio);
  if (out.width > MAX_IMAGE_DIM || out.height > MAX_IMAGE_DIM) {
    info.textContent = `result ${out.width}x${out.height} exceeds ${MAX_IMAGE_DIM}; crop or scale down`;
    return;
  }
  const full = document.createElement("canvas");
  full.width = out.width;
  full.height = out.height;
  full.getContext("2d")!.drawImage(
    source, region.x, region.y, region.w, region.h, 0, 0, out.width, out.height,
  );
  const thumbDims = thumbnailSize(out.width, out.height);
  const thumb = document.createElement("canvas");
  thumb.width = thumbDims.width;
  thumb.height = thumbDims.height;
  thumb.getContext("2d")!.drawImage(full, 0, 0, thumbDims.width, thumbDims.height);

  const request = {
    name: document.querySelector<HTMLInputElement>("#name")!.value || "image",
    notes: document.querySelector<HTMLInputElement>("#notes")!.value,
    width: out.width,
    height: out.height,
    fullUri: full.toDataURL("image/png"),
    thumbUri: thumb.toDataURL("image/png"),
  };
  const attempt = (): void => {
    if (commitImage(window.localStorage, request)) {
      committed = true;
      info.textContent = `saved ${out.width}x${out.height} to the notebook`;
    } else {
      // previous handoff not consumed yet; retry after a poll interval
      setTimeout(attempt, 150);
    }
  };
  attempt();
});

// Leaving without a commit must reset the channel so the main window
// never picks up a stale handoff.
window.addEventListener("beforeunload", () => {
  if (!committed) publishEditorClosed(window.localStorage);
});
