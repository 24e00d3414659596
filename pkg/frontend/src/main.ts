// DOM wiring: webcam recording / file upload on the left, top-5 percentage
// bars on the right.  All service traffic goes through ApiClient.

import { ApiClient } from "./api.js";
import {
  CAMERA_DENIED_GUIDANCE,
  guidanceFor,
  renderBars,
  renderTiming,
} from "./render.js";
import { CaptureSession } from "./session.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8000";
const api = new ApiClient(apiBase);
const session = new CaptureSession(15);

const el = (id: string) => document.getElementById(id) as HTMLElement;
const recordButton = el("record") as HTMLButtonElement;
const stopButton = el("stop") as HTMLButtonElement;
const discardButton = el("discard") as HTMLButtonElement;
const submitButton = el("submit") as HTMLButtonElement;
const uploadInput = el("upload") as HTMLInputElement;
const preview = el("preview") as HTMLVideoElement;
const liveView = el("live") as HTMLVideoElement;
const statusBox = el("status");
const resultsBox = el("results");
const timingBox = el("timing");

let recorder: MediaRecorder | null = null;
let recordedChunks: Blob[] = [];
let recordStarted = 0;

function refreshControls(): void {
  submitButton.disabled = !session.canSubmit();
  discardButton.disabled = !session.hasClip || session.pending;
  stopButton.disabled = recorder === null;
  recordButton.disabled = session.cameraDenied || recorder !== null || session.pending;
  preview.style.display = session.hasClip ? "block" : "none";
  liveView.style.display = recorder !== null ? "block" : "none";
}

function setStatus(text: string): void {
  statusBox.textContent = text;
}

function adoptClip(clip: Blob, durationSeconds: number | null): void {
  session.setClip(clip, durationSeconds);
  preview.src = URL.createObjectURL(clip);
  resultsBox.innerHTML = "";
  timingBox.textContent = "";
  if (!session.withinDurationCap) {
    setStatus(`Clip is longer than the ${session.maxSeconds}s cap; record a shorter one.`);
  } else {
    setStatus("Clip ready. Submit to recognize the sign.");
  }
  refreshControls();
}

uploadInput.addEventListener("change", () => {
  const file = uploadInput.files?.[0];
  if (file) {
    session.setMode("upload");
    adoptClip(file, null);
  }
});

recordButton.addEventListener("click", async () => {
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({ video: true });
  } catch {
    session.denyCamera();
    setStatus(CAMERA_DENIED_GUIDANCE);
    refreshControls();
    return;
  }
  session.setMode("webcam");
  liveView.srcObject = stream;
  await liveView.play();
  recordedChunks = [];
  recorder = new MediaRecorder(stream);
  recorder.ondataavailable = (event) => {
    if (event.data.size > 0) recordedChunks.push(event.data);
  };
  recorder.onstop = () => {
    stream.getTracks().forEach((track) => track.stop());
    liveView.srcObject = null;
    const clip = new Blob(recordedChunks, { type: recorder?.mimeType ?? "video/webm" });
    const duration = (performance.now() - recordStarted) / 1000;
    recorder = null;
    adoptClip(clip, duration);
  };
  recordStarted = performance.now();
  recorder.start();
  setStatus("Recording… perform one sign, then stop.");
  refreshControls();
});

stopButton.addEventListener("click", () => recorder?.stop());

discardButton.addEventListener("click", () => {
  session.discard();
  preview.removeAttribute("src");
  resultsBox.innerHTML = "";
  timingBox.textContent = "";
  setStatus("Clip discarded. Record or upload another one.");
  refreshControls();
});

submitButton.addEventListener("click", async () => {
  if (!session.canSubmit() || !session.clip) return;
  session.beginSubmit();
  refreshControls();
  setStatus("Recognizing…");
  try {
    const result = await api.predict(session.clip, 5);
    resultsBox.innerHTML = renderBars(result.predictions, 5);
    timingBox.textContent = renderTiming(result.timing);
    setStatus("Top-5 glosses, most likely first. Not the sign you meant? Adjust and retry.");
  } catch (error) {
    resultsBox.innerHTML = "";
    setStatus(guidanceFor(error));
  } finally {
    session.endSubmit();
    refreshControls();
  }
});

api
  .health()
  .then((h) => setStatus(`Service ready (model ${h.model_id}). Record or upload a signing clip.`))
  .catch(() => setStatus(`Cannot reach the service at ${apiBase}. Start it with: spoterkit serve`));

refreshControls();
