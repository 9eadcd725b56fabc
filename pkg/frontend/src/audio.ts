/** Audio-to-utterance linkage.
 *
 * Transcription drafts produced through the service carry adapter
 * timestamps at creation time but the stored transcript rows do not, so
 * the editor keeps a per-recording anchor map: utterance send_id →
 * playback seconds. Adapter timestamps seed the map when available;
 * clinicians can re-anchor manually.
 */

export interface AnchorMap {
  readonly anchors: ReadonlyMap<number, number>;
}

export function emptyAnchors(): AnchorMap {
  return { anchors: new Map() };
}

/** Seed anchors from adapter drafts: one {start} per spoken utterance, in order. */
export function anchorsFromTimestamps(
  sendIds: number[],
  starts: number[],
): AnchorMap {
  const anchors = new Map<number, number>();
  const n = Math.min(sendIds.length, starts.length);
  for (let i = 0; i < n; i++) {
    const sendId = sendIds[i];
    const start = starts[i];
    if (sendId !== undefined && start !== undefined) anchors.set(sendId, start);
  }
  return { anchors };
}

export function setAnchor(map: AnchorMap, sendId: number, seconds: number): AnchorMap {
  const anchors = new Map(map.anchors);
  anchors.set(sendId, Math.max(0, seconds));
  return { anchors };
}

/** Seek target for an utterance: its own anchor, else the nearest
 * anchored utterance at or before it, else the start of the recording. */
export function seekTarget(map: AnchorMap, sendId: number): number {
  const exact = map.anchors.get(sendId);
  if (exact !== undefined) return exact;
  let best: { sendId: number; seconds: number } | null = null;
  for (const [anchored, seconds] of map.anchors) {
    if (anchored <= sendId && (best === null || anchored > best.sendId)) {
      best = { sendId: anchored, seconds };
    }
  }
  return best ? best.seconds : 0;
}

/** The utterance the playhead is inside, given anchor order. */
export function utteranceAt(map: AnchorMap, seconds: number): number | null {
  let best: { sendId: number; seconds: number } | null = null;
  for (const [sendId, start] of map.anchors) {
    if (start <= seconds && (best === null || start > best.seconds)) {
      best = { sendId, seconds: start };
    }
  }
  return best ? best.sendId : null;
}
