/** Headless chart rendering: echarts option -> SVG string or PNG bytes. */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, extname } from "node:path";
import * as echarts from "echarts";
import type { EChartsOption } from "echarts";
import sharp from "sharp";

export type ImageFormat = "png" | "svg";

export const DEFAULT_WIDTH = 900;
export const DEFAULT_HEIGHT = 600;

export function renderToSvg(
  option: EChartsOption,
  width: number = DEFAULT_WIDTH,
  height: number = DEFAULT_HEIGHT,
): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption(option);
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}

export function formatFromPath(path: string, explicit?: string): ImageFormat {
  const format = (explicit ?? extname(path).replace(".", "")).toLowerCase();
  if (format !== "png" && format !== "svg") {
    throw new Error(`unsupported image format ${format || "(none)"}: use png or svg`);
  }
  return format;
}

export async function writeImage(
  option: EChartsOption,
  outPath: string,
  format: ImageFormat,
  width: number = DEFAULT_WIDTH,
  height: number = DEFAULT_HEIGHT,
): Promise<void> {
  const svg = renderToSvg(option, width, height);
  mkdirSync(dirname(outPath), { recursive: true });
  if (format === "svg") {
    writeFileSync(outPath, svg, "utf-8");
    return;
  }
  const png = await sharp(Buffer.from(svg), { density: 144 }).png().toBuffer();
  writeFileSync(outPath, png);
}
