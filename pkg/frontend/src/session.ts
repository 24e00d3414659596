// Capture-session state machine: what clip exists, whether it may be
// submitted, and whether a submission is in flight.  Pure logic, no DOM.

export type CaptureMode = "upload" | "webcam";

export class CaptureSession {
  mode: CaptureMode = "upload";
  clip: Blob | null = null;
  durationSeconds: number | null = null;
  pending = false;
  cameraDenied = false;

  constructor(readonly maxSeconds = 15) {}

  setMode(mode: CaptureMode): void {
    this.mode = mode;
  }

  denyCamera(): void {
    // Webcam permission refused: record mode is off the table, upload stays.
    this.cameraDenied = true;
    if (this.mode === "webcam") this.mode = "upload";
  }

  setClip(clip: Blob, durationSeconds: number | null): void {
    this.clip = clip;
    this.durationSeconds = durationSeconds;
  }

  discard(): void {
    this.clip = null;
    this.durationSeconds = null;
  }

  get hasClip(): boolean {
    return this.clip !== null && this.clip.size > 0;
  }

  get withinDurationCap(): boolean {
    return this.durationSeconds === null || this.durationSeconds <= this.maxSeconds;
  }

  /** Submit is enabled only for a non-empty clip within the cap, one at a time. */
  canSubmit(): boolean {
    return this.hasClip && this.withinDurationCap && !this.pending;
  }

  beginSubmit(): void {
    if (!this.canSubmit()) throw new Error("submit is not available");
    this.pending = true;
  }

  endSubmit(): void {
    this.pending = false;
  }
}
