import { describe, expect, it } from "vitest";

import { publishEditorClosed, takeHandoff } from "../src/channel.js";
import {
  commitImage,
  scaledSize,
  thumbnailSize,
} from "../src/editorCore.js";
import { encodeDataUri } from "../src/datauri.js";
import { Session } from "../src/session.js";
import { newWebsiteEntry } from "../src/model.js";
import { FakeStorage } from "./helpers.js";

describe("editor math", () => {
  it("applies the fixed reduction ratios", () => {
    expect(scaledSize(2048, 2048, 2)).toEqual({ width: 1024, height: 1024 });
    expect(scaledSize(2048, 2048, 4)).toEqual({ width: 512, height: 512 });
    expect(scaledSize(2048, 2048, 8)).toEqual({ width: 256, height: 256 });
    expect(scaledSize(100, 50, 1)).toEqual({ width: 100, height: 50 });
    expect(scaledSize(5, 3, 8)).toEqual({ width: 1, height: 1 });
  });

  it("bounds thumbnails at 128 with aspect kept", () => {
    expect(thumbnailSize(2048, 1024)).toEqual({ width: 128, height: 64 });
    expect(thumbnailSize(2048, 2048)).toEqual({ width: 128, height: 128 });
    expect(thumbnailSize(100, 50)).toEqual({ width: 100, height: 50 });
    const t = thumbnailSize(1999, 777);
    expect(Math.max(t.width, t.height)).toBe(128);
  });
});

function fakeUri(tag: string): string {
  return encodeDataUri("image/png", new TextEncoder().encode(tag));
}

describe("editor commit through the channel", () => {
  it("turns a scale-1:4 commit of 2048x2048 into a 512x512 record with a small thumbnail", () => {
    const storage = new FakeStorage();
    const out = scaledSize(2048, 2048, 4);
    const accepted = commitImage(storage, {
      name: "aia 171", notes: "quarter scale",
      width: out.width, height: out.height,
      fullUri: fakeUri("full"), thumbUri: fakeUri("thumb"),
    });
    expect(accepted).toBe(true);

    const session = new Session({
      websites: [newWebsiteEntry("gateway", "http://x/", "2014-09-05")],
      schemaLocation: null,
    });
    const handoff = takeHandoff(storage);
    if (handoff?.op !== "ImageReady") throw new Error("expected ImageReady");
    session.applyEditorImage(handoff.image);

    const images = session.notebook.websites[0].images;
    expect(images).toHaveLength(1);
    expect(images[0].fullWidth).toBe(512);
    expect(images[0].fullHeight).toBe(512);
    expect(Math.max(images[0].thumbWidth, images[0].thumbHeight)).toBeLessThanOrEqual(128);
    expect(new TextDecoder().decode(images[0].full.payload)).toBe("full");
  });

  it("produces no record when the editor closes without commit", () => {
    const storage = new FakeStorage();
    const session = new Session({
      websites: [newWebsiteEntry("gateway", "http://x/", "2014-09-05")],
      schemaLocation: null,
    });
    let closedSignals = 0;

    // editor opened, user changed their mind; window close publishes the reset
    publishEditorClosed(storage);

    const handoff = takeHandoff(storage);
    expect(handoff).toEqual({ op: "EditorClosed" });
    if (handoff?.op === "EditorClosed") closedSignals++;
    expect(session.notebook.websites[0].images).toHaveLength(0);
    expect(closedSignals).toBe(1);
    expect(storage.size).toBe(0);
  });

  it("rejects commits outside the editor bound", () => {
    const storage = new FakeStorage();
    expect(() =>
      commitImage(storage, {
        name: "too big", notes: "", width: 4096, height: 10,
        fullUri: fakeUri("x"), thumbUri: fakeUri("y"),
      }),
    ).toThrow(/bound/);
  });
});
