import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";

export const FIXTURES = join(__dirname, "fixtures");
export const GRID_DIR = join(FIXTURES, "grid");
export const SINGLE_DIR = join(FIXTURES, "single");

for (const dir of [GRID_DIR, SINGLE_DIR]) {
  if (!existsSync(join(dir, "aggregate.json"))) {
    throw new Error(
      `fixture directory ${dir} is missing; run \`npm run fixtures\` ` +
        "(requires the Python calboost package on PATH)",
    );
  }
}

/** aggregate.csv rows keyed by policy label (no quoting in this CSV). */
export function readAggregateCsv(dir: string): Map<string, Record<string, string>> {
  const lines = readFileSync(join(dir, "aggregate.csv"), "utf-8").trim().split(/\r?\n/);
  const header = lines[0].split(",");
  const rows = new Map<string, Record<string, string>>();
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const row: Record<string, string> = {};
    header.forEach((name, i) => {
      row[name] = cells[i];
    });
    rows.set(row["policy"], row);
  }
  return rows;
}
