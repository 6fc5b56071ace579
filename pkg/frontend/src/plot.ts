/** High-level plotting entry points working from an output directory. */

import { buildLearningCurveOption } from "./learningCurve";
import { buildReliabilityOption } from "./reliability";
import {
  DEFAULT_HEIGHT,
  DEFAULT_WIDTH,
  ImageFormat,
  formatFromPath,
  writeImage,
} from "./render";
import { loadAggregate, loadReliability } from "./schema";

export type PlotKind = "learning_curve" | "reliability";

export interface PlotRequest {
  /** Experiment output directory holding aggregate.json / reliability.json. */
  inputDir: string;
  kind: PlotKind;
  /** Policies to draw; empty or omitted means all policies in the file. */
  policies?: string[];
  outputPath: string;
  /** Defaults to the output path's extension. */
  format?: ImageFormat;
  width?: number;
  height?: number;
}

export async function plot(request: PlotRequest): Promise<string> {
  const option =
    request.kind === "learning_curve"
      ? buildLearningCurveOption(loadAggregate(request.inputDir), request.policies)
      : buildReliabilityOption(loadReliability(request.inputDir), request.policies);
  const format = formatFromPath(request.outputPath, request.format);
  await writeImage(
    option,
    request.outputPath,
    format,
    request.width ?? DEFAULT_WIDTH,
    request.height ?? DEFAULT_HEIGHT,
  );
  return request.outputPath;
}

export function plotLearningCurve(request: Omit<PlotRequest, "kind">): Promise<string> {
  return plot({ ...request, kind: "learning_curve" });
}

export function plotReliability(request: Omit<PlotRequest, "kind">): Promise<string> {
  return plot({ ...request, kind: "reliability" });
}
