/**
 * Reliability figure: empirical positive frequency versus bin-mean
 * predicted probability for each selected policy, with the main diagonal
 * (a perfectly calibrated estimator) as reference, plus a companion
 * histogram of how the predicted probabilities distribute over the bins.
 *
 * Bins that received no predictions are skipped, never interpolated.
 */

import type { EChartsOption, SeriesOption } from "echarts";
import { PALETTE } from "./learningCurve";
import { ReliabilityBins, ReliabilityFile, selectPolicies } from "./schema";

export interface ReliabilityPoint {
  /** Mean predicted probability of the examples that fell in the bin. */
  meanPredicted: number;
  /** Fraction of those examples whose true label was positive. */
  empiricalFrequency: number;
  count: number;
}

/** Per-bin points for the non-empty bins, in bin order. */
export function reliabilityPoints(bins: ReliabilityBins): ReliabilityPoint[] {
  const points: ReliabilityPoint[] = [];
  for (let i = 0; i < bins.bin_count; i++) {
    if (bins.counts[i] === 0) {
      continue;
    }
    points.push({
      meanPredicted: bins.prob_sums[i] / bins.counts[i],
      empiricalFrequency: bins.pos_counts[i] / bins.counts[i],
      count: bins.counts[i],
    });
  }
  return points;
}

export function buildReliabilityOption(
  reliability: ReliabilityFile,
  requested?: string[],
): EChartsOption {
  const policies = selectPolicies(reliability.policies, requested);
  const binCount = reliability.bin_count;
  const binLabels = Array.from(
    { length: binCount },
    (_, i) => ((i + 0.5) / binCount).toFixed(2),
  );
  const series: SeriesOption[] = [
    {
      name: "perfectly calibrated",
      type: "line",
      xAxisIndex: 0,
      yAxisIndex: 0,
      data: [
        [0, 0],
        [1, 1],
      ],
      lineStyle: { type: "dashed", color: "#999" },
      symbol: "none",
      silent: true,
    },
  ];

  policies.forEach((policy, i) => {
    const color = PALETTE[i % PALETTE.length];
    const bins = reliability.policies[policy];
    series.push({
      name: policy,
      type: "scatter",
      xAxisIndex: 0,
      yAxisIndex: 0,
      data: reliabilityPoints(bins).map((p) => [p.meanPredicted, p.empiricalFrequency]),
      itemStyle: { color },
      symbolSize: 9,
    });
    series.push({
      name: policy,
      type: "bar",
      xAxisIndex: 1,
      yAxisIndex: 1,
      data: bins.counts.slice(),
      itemStyle: { color, opacity: 0.75 },
    });
  });

  return {
    animation: false,
    title: { text: "Reliability diagram", left: "center" },
    legend: { data: policies, top: 28, type: "scroll" },
    grid: [
      { left: 70, right: 30, top: 70, height: "48%" },
      { left: 70, right: 30, bottom: 50, height: "20%" },
    ],
    xAxis: [
      {
        type: "value",
        gridIndex: 0,
        name: "mean predicted probability",
        nameLocation: "middle",
        nameGap: 28,
        min: 0,
        max: 1,
      },
      {
        type: "category",
        gridIndex: 1,
        name: "predicted probability bin",
        nameLocation: "middle",
        nameGap: 28,
        data: binLabels,
      },
    ],
    yAxis: [
      {
        type: "value",
        gridIndex: 0,
        name: "empirical frequency",
        nameLocation: "middle",
        nameGap: 45,
        min: 0,
        max: 1,
      },
      {
        type: "value",
        gridIndex: 1,
        name: "predictions",
        nameLocation: "middle",
        nameGap: 45,
      },
    ],
    series,
  };
}
