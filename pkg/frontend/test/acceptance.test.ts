/**
 * Release gate for the plotting package, run against a full experiment
 * output directory (synthetic stream, all 14 policies, 10 runs). Each
 * check prints a PASS/FAIL line.
 */

import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import type { LineSeriesOption } from "echarts";
import { buildLearningCurveOption } from "../src/learningCurve";
import { plotLearningCurve, plotReliability } from "../src/plot";
import { loadAggregate, loadReliability } from "../src/schema";
import { GRID_DIR, readAggregateCsv } from "./helpers";

const PNG_MAGIC = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

function report(name: string, ok: boolean, detail: string) {
  console.log(`[${ok ? "PASS" : "FAIL"}] ${name}: ${detail}`);
  expect(ok, `${name}: ${detail}`).toBe(true);
}

describe("acceptance", () => {
  it("renders valid image files of both kinds from the experiment directory", async () => {
    const dir = mkdtempSync(join(tmpdir(), "calboost-accept-"));
    const curveSvg = readFileSync(
      await plotLearningCurve({ inputDir: GRID_DIR, outputPath: join(dir, "curve.svg") }),
      "utf-8",
    );
    const curvePng = readFileSync(
      await plotLearningCurve({ inputDir: GRID_DIR, outputPath: join(dir, "curve.png") }),
    );
    const relSvg = readFileSync(
      await plotReliability({ inputDir: GRID_DIR, outputPath: join(dir, "rel.svg") }),
      "utf-8",
    );
    const relPng = readFileSync(
      await plotReliability({ inputDir: GRID_DIR, outputPath: join(dir, "rel.png") }),
    );
    const ok =
      curveSvg.startsWith("<svg") &&
      relSvg.startsWith("<svg") &&
      curvePng.subarray(0, 8).equals(PNG_MAGIC) &&
      relPng.subarray(0, 8).equals(PNG_MAGIC);
    report(
      "plots render valid images",
      ok,
      `svg ${curveSvg.length}/${relSvg.length} chars, png ${curvePng.length}/${relPng.length} bytes`,
    );
  });

  it("plotted final log-loss values match aggregate.csv", () => {
    const option = buildLearningCurveOption(loadAggregate(GRID_DIR));
    const csv = readAggregateCsv(GRID_DIR);
    let compared = 0;
    let worst = 0;
    for (const series of option.series as LineSeriesOption[]) {
      const row = csv.get(series.name as string);
      if (!row) {
        continue; // band helper series
      }
      const data = series.data as number[];
      worst = Math.max(worst, Math.abs(data[data.length - 1] - Number(row["final_logloss_mean"])));
      compared += 1;
    }
    report(
      "final plotted values match aggregate.csv",
      compared === csv.size && worst < 1e-12,
      `${compared}/${csv.size} policies, max deviation ${worst.toExponential(2)}`,
    );
  });

  it("uncalibrated predictions pile up in the two extreme bins", () => {
    const bins = loadReliability(GRID_DIR).policies["uncalibrated"];
    const total = bins.counts.reduce((a, b) => a + b, 0);
    const extreme = bins.counts[0] + bins.counts[bins.counts.length - 1];
    const share = extreme / total;
    report(
      "uncalibrated mass in extreme bins",
      share > 0.5,
      `${(share * 100).toFixed(1)}% of ${total} predictions in bins 0 and ${bins.counts.length - 1}`,
    );
  });
});
