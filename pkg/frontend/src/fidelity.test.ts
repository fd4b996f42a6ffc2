// Display-fidelity contract: every number shown in the badges comes straight
// from the service's scene diagnostics, pinned against recorded fixtures.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { deriveBadges } from "./state.js";
import { Scene } from "./types.js";

const PRESET_FIXTURES: Record<string, string> = {
  simple: "fixtures/scene_simple.json",
  "bumping-t1.2": "fixtures/scene_bumping-t1.2.json",
  "sliding-t0.8": "fixtures/scene_sliding-t0.8.json",
};

function loadScene(path: string): Scene {
  return JSON.parse(readFileSync(new URL(`../${path}`, import.meta.url), "utf8"));
}

describe("badge fidelity against service fixtures", () => {
  for (const [name, path] of Object.entries(PRESET_FIXTURES)) {
    it(`matches diagnostics for preset ${name}`, () => {
      const scene = loadScene(path);
      const badges = deriveBadges(scene);
      expect(badges.faceCount).toBe(scene.diagnostics.face_class_count);
      expect(badges.edgeCount).toBe(scene.diagnostics.edge_class_count);
      expect(badges.tunnel).toBe(scene.diagnostics.tunnel);
      expect(badges.minParabolic).toBe(scene.diagnostics.min_parabolic);
      expect(badges.status).toBe(scene.diagnostics.status);
      expect(badges.poincarePassed).toBe(scene.diagnostics.poincare_passed);
    });
  }

  it("pins the expected values for the known presets", () => {
    const simple = deriveBadges(loadScene(PRESET_FIXTURES.simple));
    expect(simple.faceCount).toBe(2);
    expect(simple.edgeCount).toBe(0);
    expect(simple.tunnel).toBe("dual_certified");
    const bumping = deriveBadges(loadScene(PRESET_FIXTURES["bumping-t1.2"]));
    expect(bumping.faceCount).toBe(4);
    expect(bumping.edgeCount).toBe(1);
    const sliding = deriveBadges(loadScene(PRESET_FIXTURES["sliding-t0.8"]));
    expect(sliding.faceCount).toBe(6);
    expect(sliding.tunnel).toBe("dual_certified");
  });

  it("counts chords and tangencies straight from the scene arrays", () => {
    const scene = loadScene("fixtures/scene_tangent.json");
    const badges = deriveBadges(scene);
    expect(badges.tangencyCount).toBe(scene.tangencies.length);
    expect(badges.tangencyCount).toBeGreaterThan(0);
    expect(badges.minParabolic).toBe("inconclusive");
  });
});
