import { describe, expect, it } from "vitest";

import { CaptureSession } from "../src/session.js";

const clip = (bytes = 16) => new Blob([new Uint8Array(bytes)]);

describe("CaptureSession", () => {
  it("starts with submit disabled", () => {
    expect(new CaptureSession().canSubmit()).toBe(false);
  });

  it("enables submit once a non-empty clip exists", () => {
    const session = new CaptureSession();
    session.setClip(clip(), 3);
    expect(session.canSubmit()).toBe(true);
  });

  it("keeps submit disabled for an empty clip", () => {
    const session = new CaptureSession();
    session.setClip(clip(0), 2);
    expect(session.canSubmit()).toBe(false);
  });

  it("record then discard leaves an empty session with submit disabled", () => {
    const session = new CaptureSession();
    session.setMode("webcam");
    session.setClip(clip(), 4);
    session.discard();
    expect(session.hasClip).toBe(false);
    expect(session.canSubmit()).toBe(false);
  });

  it("enforces the service duration cap", () => {
    const session = new CaptureSession(15);
    session.setClip(clip(), 16);
    expect(session.canSubmit()).toBe(false);
    session.setClip(clip(), 15);
    expect(session.canSubmit()).toBe(true);
    session.setClip(clip(), null); // unknown duration (uploads): allowed, server enforces
    expect(session.canSubmit()).toBe(true);
  });

  it("denying the camera keeps the upload path fully working", () => {
    const session = new CaptureSession();
    session.setMode("webcam");
    session.denyCamera();
    expect(session.mode).toBe("upload");
    expect(session.cameraDenied).toBe(true);
    session.setClip(clip(), 5);
    expect(session.canSubmit()).toBe(true);
  });

  it("allows one in-flight submission at a time", () => {
    const session = new CaptureSession();
    session.setClip(clip(), 5);
    session.beginSubmit();
    expect(session.canSubmit()).toBe(false);
    expect(() => session.beginSubmit()).toThrow();
    session.endSubmit();
    expect(session.canSubmit()).toBe(true);
  });
});
