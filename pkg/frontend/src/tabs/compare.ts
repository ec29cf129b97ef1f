/** Algorithm-comparison tab: every selected dataset plotted at
 * (score of algorithm 1, score of algorithm 2) over the five colored
 * regions, with one table per region. Datasets missing either score
 * are left out and counted in a footnote. Swapping the algorithms
 * mirrors the plot across the diagonal.
 */

import { lookupScore, scoreIndex } from "../api.js";
import { classifyRegion, REGIONS, type Region } from "../analysis.js";
import { drawScatter, exportCsv, exportPng, REGION_FILLS } from "../chart.js";
import type { AppContext } from "../context.js";
import { buildComparisonCsv, type ComparisonCsvRow } from "../csv.js";
import { el, labeled, select } from "../dom.js";
import { pyFloatRepr } from "../floatRepr.js";
import { filteredDatasets } from "../state.js";
import { K_VALUES, METRICS, type KValue, type Metric } from "../types.js";

const REGION_TITLES: Record<Region, (a1: string, a2: string) => string> = {
  alg1_wins: (a1) => `${a1} clearly ahead`,
  alg2_wins: (_a1, a2) => `${a2} clearly ahead`,
  both_well: () => "Both perform well",
  both_poorly: () => "Both perform poorly",
  both_moderate: () => "Both moderate",
};

export async function renderCompareTab(ctx: AppContext): Promise<void> {
  const { metric, k, alg1, alg2 } = ctx.state;

  const controls = el("div", { class: "controls" });
  const algOptions = ctx.catalog.algorithms.map((a) => ({ value: a }));
  controls.append(
    labeled(
      "Algorithm 1",
      select(algOptions, alg1, (value) => ctx.setState({ alg1: value })),
    ),
    labeled(
      "Algorithm 2",
      select(algOptions, alg2, (value) => ctx.setState({ alg2: value })),
    ),
  );
  const swap = el("button", { title: "Swap the two algorithms" }, ["Swap"]);
  swap.addEventListener("click", () =>
    ctx.setState({ alg1: alg2, alg2: alg1 }),
  );
  controls.append(swap);
  controls.append(
    labeled(
      "Metric",
      select(
        METRICS.map((m) => ({ value: m })),
        metric,
        (value) => ctx.setState({ metric: value as Metric }),
      ),
    ),
    labeled(
      "K",
      select(
        K_VALUES.map((kv) => ({ value: String(kv) })),
        String(k),
        (value) => ctx.setState({ k: Number(value) as KValue }),
      ),
    ),
  );
  ctx.content.append(controls);

  const records = await ctx.api.getPerformance(metric, k);
  const index = scoreIndex(records);
  const selected = filteredDatasets(ctx.state, ctx.catalog);

  const rows: ComparisonCsvRow[] = [];
  let omitted = 0;
  for (const dataset of selected) {
    const s1 = lookupScore(index, dataset, alg1);
    const s2 = lookupScore(index, dataset, alg2);
    if (s1 === undefined || s2 === undefined) {
      omitted += 1;
      continue;
    }
    rows.push({ dataset, score1: s1, score2: s2 });
  }

  const canvas = el("canvas", {
    width: "560",
    height: "560",
    class: "chart",
  });
  drawScatter(
    canvas,
    rows.map((r) => ({ label: r.dataset, x: r.score1, y: r.score2 })),
    {
      xLabel: `${alg1} (${metric}@${k})`,
      yLabel: `${alg2} (${metric}@${k})`,
      xRange: [0, 1],
      yRange: [0, 1],
      regions: true,
      showLabels: rows.length <= 30,
    },
  );
  ctx.content.append(canvas);

  if (omitted > 0) {
    ctx.content.append(
      el("p", { class: "caption" }, [
        `${omitted} dataset${omitted === 1 ? "" : "s"} omitted (missing scores)`,
      ]),
    );
  }

  const actions = el("div", { class: "actions" });
  const pngButton = el("button", {}, ["Export PNG"]);
  pngButton.addEventListener("click", () =>
    exportPng(canvas, `comparison_${alg1}_${alg2}_${metric}_${k}.png`),
  );
  const csvButton = el("button", {}, ["Export CSV"]);
  csvButton.addEventListener("click", () =>
    exportCsv(
      buildComparisonCsv(rows),
      `comparison_${alg1}_${alg2}_${metric}_${k}.csv`,
    ),
  );
  actions.append(pngButton, csvButton);
  ctx.content.append(actions);

  const buckets = new Map<Region, ComparisonCsvRow[]>(
    REGIONS.map((r) => [r, []]),
  );
  for (const row of rows) {
    buckets.get(classifyRegion(row.score1, row.score2))!.push(row);
  }

  const tables = el("div", { class: "region-tables" });
  for (const region of REGIONS) {
    const bucket = buckets
      .get(region)!
      .slice()
      .sort((a, b) => (a.dataset < b.dataset ? -1 : a.dataset > b.dataset ? 1 : 0));
    const section = el("section", { class: "region" });
    const swatch = el("span", { class: "swatch" });
    swatch.style.backgroundColor = REGION_FILLS[region];
    section.append(
      el("h3", {}, [swatch, REGION_TITLES[region](alg1, alg2)]),
    );
    const table = el("table", { class: "data" });
    table.append(
      el("tr", {}, [
        el("th", {}, ["Dataset"]),
        el("th", {}, [alg1]),
        el("th", {}, [alg2]),
      ]),
    );
    for (const row of bucket) {
      table.append(
        el("tr", {}, [
          el("td", {}, [row.dataset]),
          el("td", {}, [pyFloatRepr(row.score1)]),
          el("td", {}, [pyFloatRepr(row.score2)]),
        ]),
      );
    }
    if (bucket.length === 0) {
      table.append(
        el("tr", {}, [el("td", { colspan: "3", class: "empty" }, ["none"])]),
      );
    }
    section.append(table);
    tables.append(section);
  }
  ctx.content.append(tables);
}
