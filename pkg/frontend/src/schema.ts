/**
 * Schemas and loaders for the experiment output files consumed by the
 * plotting tool: aggregate.json (per-policy running log-loss curves with
 * 95% CI half-widths plus final-value summaries) and reliability.json
 * (per-policy equal-width probability-bin accumulators pooled over runs).
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { z } from "zod";

export const PolicySummarySchema = z.object({
  rounds: z.array(z.number().int()),
  running_logloss_mean: z.array(z.number()),
  running_logloss_halfwidth: z.array(z.number()),
  final_logloss_mean: z.number(),
  final_logloss_halfwidth: z.number(),
  final_brier_mean: z.number(),
  final_brier_halfwidth: z.number(),
  runs: z.number().int().positive(),
});

export const AggregateFileSchema = z.object({
  policies: z.record(z.string(), PolicySummarySchema),
});

export const ReliabilityBinsSchema = z.object({
  bin_count: z.number().int().positive(),
  counts: z.array(z.number().int().nonnegative()),
  prob_sums: z.array(z.number()),
  pos_counts: z.array(z.number().int().nonnegative()),
});

export const ReliabilityFileSchema = z.object({
  bin_count: z.number().int().positive(),
  policies: z.record(z.string(), ReliabilityBinsSchema),
});

export type PolicySummary = z.infer<typeof PolicySummarySchema>;
export type AggregateFile = z.infer<typeof AggregateFileSchema>;
export type ReliabilityBins = z.infer<typeof ReliabilityBinsSchema>;
export type ReliabilityFile = z.infer<typeof ReliabilityFileSchema>;

/** Thrown when a requested policy is absent from the loaded file. */
export class MissingPolicyError extends Error {
  constructor(
    public readonly missing: string[],
    public readonly available: string[],
  ) {
    super(
      `policy not found in input: ${missing.join(", ")} ` +
        `(available: ${available.join(", ")})`,
    );
    this.name = "MissingPolicyError";
  }
}

function parseFile<T>(path: string, schema: z.ZodType<T>): T {
  let raw: string;
  try {
    raw = readFileSync(path, "utf-8");
  } catch (err) {
    throw new Error(`cannot read ${path}: ${(err as Error).message}`);
  }
  const result = schema.safeParse(JSON.parse(raw));
  if (!result.success) {
    throw new Error(`${path} does not match the expected schema: ${result.error.message}`);
  }
  return result.data;
}

export function loadAggregate(inputDir: string): AggregateFile {
  return parseFile(join(inputDir, "aggregate.json"), AggregateFileSchema);
}

export function loadReliability(inputDir: string): ReliabilityFile {
  return parseFile(join(inputDir, "reliability.json"), ReliabilityFileSchema);
}

/**
 * Resolve the policy subset to plot. An empty/omitted request selects every
 * policy in file order; unknown names raise MissingPolicyError naming both
 * the missing and the available policies.
 */
export function selectPolicies(
  available: Record<string, unknown>,
  requested?: string[],
): string[] {
  const names = Object.keys(available);
  if (!requested || requested.length === 0) {
    return names;
  }
  const missing = requested.filter((p) => !names.includes(p));
  if (missing.length > 0) {
    throw new MissingPolicyError(missing, names);
  }
  return requested;
}
