/**
 * Learning-curve figure: running log-loss versus minibatches seen, one
 * curve per selected policy with a shaded 95% confidence band around it.
 *
 * Every number plotted comes straight from aggregate.json; the band edges
 * are mean ± halfwidth as emitted by the experiment harness.
 */

import type { EChartsOption, SeriesOption } from "echarts";
import { AggregateFile, selectPolicies } from "./schema";

export const PALETTE = [
  "#5470c6",
  "#ee6666",
  "#91cc75",
  "#fac858",
  "#73c0de",
  "#3ba272",
  "#fc8452",
  "#9a60b4",
  "#ea7ccc",
  "#2f4554",
  "#61a0a8",
  "#d48265",
  "#749f83",
  "#ca8622",
];

export function buildLearningCurveOption(
  aggregate: AggregateFile,
  requested?: string[],
): EChartsOption {
  const policies = selectPolicies(aggregate.policies, requested);
  const rounds = aggregate.policies[policies[0]].rounds;
  const series: SeriesOption[] = [];

  policies.forEach((policy, i) => {
    const summary = aggregate.policies[policy];
    const color = PALETTE[i % PALETTE.length];
    const lower = summary.running_logloss_mean.map(
      (m, j) => m - summary.running_logloss_halfwidth[j],
    );
    const width = summary.running_logloss_halfwidth.map((h) => 2 * h);
    // Confidence band: an invisible line at the lower edge plus a stacked
    // filled segment of height 2*halfwidth on top of it.
    series.push({
      name: `${policy} (band lower)`,
      type: "line",
      data: lower,
      stack: `band-${policy}`,
      lineStyle: { opacity: 0 },
      symbol: "none",
      silent: true,
      tooltip: { show: false },
    });
    series.push({
      name: `${policy} (band)`,
      type: "line",
      data: width,
      stack: `band-${policy}`,
      lineStyle: { opacity: 0 },
      areaStyle: { color, opacity: 0.2 },
      symbol: "none",
      silent: true,
      tooltip: { show: false },
    });
    series.push({
      name: policy,
      type: "line",
      data: summary.running_logloss_mean.slice(),
      itemStyle: { color },
      lineStyle: { color },
      symbol: "none",
    });
  });

  return {
    animation: false,
    title: { text: "Running log-loss", left: "center" },
    legend: { data: policies, top: 28, type: "scroll" },
    grid: { left: 70, right: 30, top: 70, bottom: 55 },
    xAxis: {
      type: "category",
      name: "minibatches",
      nameLocation: "middle",
      nameGap: 30,
      data: rounds.map(String),
      boundaryGap: false,
    },
    yAxis: {
      type: "value",
      name: "running log-loss",
      nameLocation: "middle",
      nameGap: 45,
      scale: true,
    },
    series,
  };
}
