#!/usr/bin/env node
/**
 * plot --in DIR --kind {learning_curve|reliability} --policies a,b,c --out FILE
 *
 * Reads aggregate.json / reliability.json from an experiment output
 * directory and writes a PNG or SVG figure (format inferred from the
 * output extension unless --format is given).
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { PlotKind, plot } from "./plot";
import { DEFAULT_HEIGHT, DEFAULT_WIDTH } from "./render";

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .scriptName("calboost-plot")
    .usage("$0 --in DIR --kind KIND --out FILE [--policies a,b,c]")
    .option("in", {
      type: "string",
      demandOption: true,
      describe: "experiment output directory",
    })
    .option("kind", {
      choices: ["learning_curve", "reliability"] as const,
      demandOption: true,
      describe: "figure type",
    })
    .option("policies", {
      type: "string",
      describe: "comma-separated policy subset (default: all in the file)",
    })
    .option("out", {
      type: "string",
      demandOption: true,
      describe: "output image path (.png or .svg)",
    })
    .option("format", {
      choices: ["png", "svg"] as const,
      describe: "override the format inferred from --out",
    })
    .option("width", { type: "number", default: DEFAULT_WIDTH })
    .option("height", { type: "number", default: DEFAULT_HEIGHT })
    .strict()
    .help()
    .parse();

  const policies = args.policies
    ? args.policies.split(",").map((p) => p.trim()).filter((p) => p.length > 0)
    : undefined;
  try {
    const written = await plot({
      inputDir: args.in,
      kind: args.kind as PlotKind,
      policies,
      outputPath: args.out,
      format: args.format,
      width: args.width,
      height: args.height,
    });
    console.log(`wrote ${written}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
