/** CSV builders that replicate the server CLI's export output byte for
 * byte: same headers, minimal quoting with doubled quote characters,
 * "\n" line endings, floats rendered with Python repr semantics, and
 * null cells left empty.
 */

import { classifyRegion } from "./analysis.js";
import { pyFloatRepr } from "./floatRepr.js";
import type { DatasetDto } from "./types.js";

export const APS_HEADER = [
  "dataset",
  "x",
  "y",
  "var_x",
  "var_y",
  "difficulty_score",
  "difficulty_label",
];
export const COMPARISON_HEADER = ["dataset", "score_alg1", "score_alg2", "region"];
export const METADATA_HEADER = [
  "dataset",
  "users",
  "items",
  "interactions",
  "user_item_ratio",
  "density",
  "mean_per_user",
  "mean_per_item",
  "max_per_user",
  "min_per_user",
  "max_per_item",
  "min_per_item",
  "feedback",
  "risk_user_item_ratio",
  "risk_user_item_ratio_cause",
  "risk_mean_per_user",
  "risk_mean_per_user_cause",
  "risk_mean_per_item",
  "risk_mean_per_item_cause",
];

function quoteCell(cell: string): string {
  if (/[",\n\r]/.test(cell)) {
    return `"${cell.replaceAll('"', '""')}"`;
  }
  return cell;
}

function render(header: string[], rows: string[][]): string {
  const lines = [header, ...rows].map((row) => row.map(quoteCell).join(","));
  return lines.join("\n") + "\n";
}

function intCell(value: number | null): string {
  return value === null ? "" : String(value);
}

export interface ApsCsvRow {
  dataset: string;
  x: number;
  y: number;
  varX: number;
  varY: number;
  difficultyScore: number;
  difficultyLabel: string;
}

export function buildApsCsv(rows: ApsCsvRow[]): string {
  return render(
    APS_HEADER,
    rows.map((r) => [
      r.dataset,
      pyFloatRepr(r.x),
      pyFloatRepr(r.y),
      pyFloatRepr(r.varX),
      pyFloatRepr(r.varY),
      pyFloatRepr(r.difficultyScore),
      r.difficultyLabel,
    ]),
  );
}

export interface ComparisonCsvRow {
  dataset: string;
  score1: number;
  score2: number;
}

export function buildComparisonCsv(rows: ComparisonCsvRow[]): string {
  return render(
    COMPARISON_HEADER,
    rows.map((r) => [
      r.dataset,
      pyFloatRepr(r.score1),
      pyFloatRepr(r.score2),
      classifyRegion(r.score1, r.score2),
    ]),
  );
}

export function buildMetadataCsv(datasets: DatasetDto[]): string {
  return render(
    METADATA_HEADER,
    datasets.map((d) => [
      d.name,
      String(d.numUsers),
      String(d.numItems),
      String(d.numInteractions),
      pyFloatRepr(d.userItemRatio),
      pyFloatRepr(d.density),
      pyFloatRepr(d.meanPerUser),
      pyFloatRepr(d.meanPerItem),
      intCell(d.maxPerUser),
      intCell(d.minPerUser),
      intCell(d.maxPerItem),
      intCell(d.minPerItem),
      d.feedback ?? "",
      d.risk.userItemRatio.description,
      d.risk.userItemRatio.cause,
      d.risk.meanPerUser.description,
      d.risk.meanPerUser.cause,
      d.risk.meanPerItem.description,
      d.risk.meanPerItem.cause,
    ]),
  );
}
