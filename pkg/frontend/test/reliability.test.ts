import { describe, expect, it } from "vitest";
import type { BarSeriesOption, LineSeriesOption, ScatterSeriesOption } from "echarts";
import { buildReliabilityOption, reliabilityPoints } from "../src/reliability";
import { ReliabilityBins, loadReliability } from "../src/schema";
import { GRID_DIR } from "./helpers";

function makeBins(
  counts: number[],
  probSums: number[],
  posCounts: number[],
): ReliabilityBins {
  return {
    bin_count: counts.length,
    counts,
    prob_sums: probSums,
    pos_counts: posCounts,
  };
}

describe("reliabilityPoints", () => {
  it("skips empty bins instead of interpolating", () => {
    const bins = makeBins([4, 0, 2], [0.4, 0, 1.7], [1, 0, 2]);
    const points = reliabilityPoints(bins);
    expect(points.length).toBe(2);
    expect(points[0]).toEqual({ meanPredicted: 0.1, empiricalFrequency: 0.25, count: 4 });
    expect(points[1]).toEqual({ meanPredicted: 0.85, empiricalFrequency: 1, count: 2 });
  });

  it("never emits more points than bins", () => {
    const rel = loadReliability(GRID_DIR);
    for (const bins of Object.values(rel.policies)) {
      expect(reliabilityPoints(bins).length).toBeLessThanOrEqual(rel.bin_count);
    }
  });

  it("perfectly calibrated bins sit on the diagonal within a bin width", () => {
    // each bin's positive rate equals its mean prediction
    const counts = [100, 100, 100, 100, 100];
    const probSums = [10, 30, 50, 70, 90]; // bin means 0.1 .. 0.9
    const posCounts = [10, 30, 50, 70, 90];
    for (const p of reliabilityPoints(makeBins(counts, probSums, posCounts))) {
      expect(Math.abs(p.empiricalFrequency - p.meanPredicted)).toBeLessThanOrEqual(0.2);
    }
  });
});

describe("buildReliabilityOption", () => {
  const rel = loadReliability(GRID_DIR);

  it("draws per-policy points, the diagonal, and a companion histogram", () => {
    const option = buildReliabilityOption(rel, ["uncalibrated", "ucb1"]);
    const series = option.series as (
      | LineSeriesOption
      | ScatterSeriesOption
      | BarSeriesOption
    )[];
    const diagonal = series.filter((s) => s.type === "line");
    const points = series.filter((s) => s.type === "scatter");
    const bars = series.filter((s) => s.type === "bar");
    expect(diagonal.length).toBe(1);
    expect(diagonal[0].data).toEqual([
      [0, 0],
      [1, 1],
    ]);
    expect(points.length).toBe(2);
    expect(bars.length).toBe(2);
    // histogram lives on its own axes below the diagram
    for (const bar of bars) {
      expect(bar.xAxisIndex).toBe(1);
      expect((bar.data as number[]).length).toBe(rel.bin_count);
    }
    for (const p of points) {
      expect(p.xAxisIndex ?? 0).toBe(0);
      expect((p.data as number[][]).length).toBeLessThanOrEqual(rel.bin_count);
    }
  });

  it("axes are probability-scaled with labels", () => {
    const option = buildReliabilityOption(rel, ["ucb1"]);
    const [xTop] = option.xAxis as { name?: string; min?: number; max?: number }[];
    const [yTop] = option.yAxis as { name?: string; min?: number; max?: number }[];
    expect(xTop.name).toBe("mean predicted probability");
    expect(yTop.name).toBe("empirical frequency");
    expect([xTop.min, xTop.max, yTop.min, yTop.max]).toEqual([0, 1, 0, 1]);
  });

  it("raises a named error listing available policies for unknown names", () => {
    expect(() => buildReliabilityOption(rel, ["bogus"])).toThrow(/bogus.*available:/);
  });

  it("calibrated policies track the diagonal more closely than raw scores", () => {
    const dev = (bins: ReliabilityBins) => {
      const points = reliabilityPoints(bins);
      const total = points.reduce((a, p) => a + p.count, 0);
      return points.reduce(
        (a, p) => a + (p.count / total) * Math.abs(p.empiricalFrequency - p.meanPredicted),
        0,
      );
    };
    expect(dev(rel.policies["fixed:2"])).toBeLessThan(dev(rel.policies["uncalibrated"]));
  });
});
