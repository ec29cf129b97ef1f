/** Performance-space tab: the projected scatter with uncertainty
 * ellipses, difficulty quintiles, and a similarity ranking panel.
 *
 * Without a dataset filter the server's precomputed points are plotted
 * unmodified. With a filter the tab assembles the filtered score
 * matrix from cached performance slices and reruns the projection
 * locally under the same contract and seed, then re-derives difficulty
 * and similarity from the filtered points.
 */

import { ApiError, lookupScore, scoreIndex } from "../api.js";
import {
  difficultyLabels,
  difficultyScores,
  rankBySimilarity,
  type NamedUncertainPoint,
} from "../analysis.js";
import { drawScatter, exportCsv, exportPng } from "../chart.js";
import type { AppContext } from "../context.js";
import { buildApsCsv, type ApsCsvRow } from "../csv.js";
import { el, labeled, select } from "../dom.js";
import { computePoints } from "../pca.js";
import { filteredDatasets } from "../state.js";
import { K_VALUES, METRICS, type KValue, type Metric } from "../types.js";

const FALLBACK_BOOTSTRAP = 200;
const FALLBACK_SEED = 42;

interface ApsView {
  points: Array<NamedUncertainPoint & { score: number; label: string }>;
  explainedRatio: [number, number] | null;
  recomputed: boolean;
}

async function loadView(ctx: AppContext): Promise<ApsView> {
  const { metric, k } = ctx.state;
  const selected = filteredDatasets(ctx.state, ctx.catalog);

  if (ctx.state.datasetFilter.size === 0) {
    const pca = await ctx.api.getPca(metric, k);
    return {
      points: pca.points.map((p) => ({
        dataset: p.dataset,
        x: p.x,
        y: p.y,
        varX: p.varX,
        varY: p.varY,
        score: p.difficultyScore,
        label: p.difficultyLabel,
      })),
      explainedRatio: pca.explainedRatio,
      recomputed: false,
    };
  }

  const records = await ctx.api.getPerformance(metric, k);
  const index = scoreIndex(records);
  const columns = ctx.catalog.algorithms.filter((alg) =>
    selected.every((ds) => lookupScore(index, ds, alg) !== undefined),
  );
  if (selected.length < 3) {
    throw new Error("the projection needs at least 3 selected datasets");
  }
  if (columns.length < 2) {
    throw new Error(
      "fewer than 2 algorithms have scores for every selected dataset",
    );
  }
  const matrix = selected.map((ds) =>
    columns.map((alg) => lookupScore(index, ds, alg) as number),
  );

  let bootstrap = FALLBACK_BOOTSTRAP;
  let seed = FALLBACK_SEED;
  try {
    const pca = await ctx.api.getPca(metric, k);
    bootstrap = pca.bootstrapCount;
    seed = pca.seed;
  } catch (error) {
    if (!(error instanceof ApiError && error.code === "not_computed")) {
      throw error;
    }
  }

  const { model, points } = computePoints(selected, matrix, bootstrap, seed);
  const scores = difficultyScores(points);
  const labels = difficultyLabels(scores);
  return {
    points: points.map((p, i) => ({
      ...p,
      score: scores[i],
      label: labels[i],
    })),
    explainedRatio: model.explainedRatio,
    recomputed: true,
  };
}

export async function renderApsTab(ctx: AppContext): Promise<void> {
  const controls = el("div", { class: "controls" });
  controls.append(
    labeled(
      "Metric",
      select(
        METRICS.map((m) => ({ value: m })),
        ctx.state.metric,
        (value) => ctx.setState({ metric: value as Metric }),
      ),
    ),
    labeled(
      "K",
      select(
        K_VALUES.map((k) => ({ value: String(k) })),
        String(ctx.state.k),
        (value) => ctx.setState({ k: Number(value) as KValue }),
      ),
    ),
  );
  ctx.content.append(controls);

  let view: ApsView;
  try {
    view = await loadView(ctx);
  } catch (error) {
    if (error instanceof ApiError && error.code === "not_computed") {
      ctx.content.append(
        el("p", { class: "notice" }, [
          "No projection is stored for this metric and K. ",
          "Run the precompute command against the database, then reload.",
        ]),
      );
      return;
    }
    ctx.content.append(
      el("p", { class: "notice" }, [String((error as Error).message)]),
    );
    return;
  }

  const canvas = el("canvas", {
    width: "720",
    height: "480",
    class: "chart",
  });
  drawScatter(
    canvas,
    view.points.map((p) => ({
      label: p.dataset,
      x: p.x,
      y: p.y,
      rx: Math.sqrt(p.varX),
      ry: Math.sqrt(p.varY),
    })),
    {
      xLabel: "component 1",
      yLabel: "component 2",
      showLabels: view.points.length <= 30,
    },
  );
  ctx.content.append(canvas);

  const captionBits: string[] = [];
  if (view.explainedRatio) {
    captionBits.push(
      `explained variance ${(view.explainedRatio[0] * 100).toFixed(1)}% + ` +
        `${(view.explainedRatio[1] * 100).toFixed(1)}%`,
    );
  }
  captionBits.push(
    view.recomputed
      ? `recomputed locally for ${view.points.length} selected datasets`
      : "server projection over all datasets",
  );
  ctx.content.append(el("p", { class: "caption" }, [captionBits.join("; ")]));

  const actions = el("div", { class: "actions" });
  const pngButton = el("button", {}, ["Export PNG"]);
  pngButton.addEventListener("click", () =>
    exportPng(canvas, `aps_${ctx.state.metric}_${ctx.state.k}.png`),
  );
  const csvButton = el("button", {}, ["Export CSV"]);
  csvButton.addEventListener("click", () => {
    const rows: ApsCsvRow[] = view.points.map((p) => ({
      dataset: p.dataset,
      x: p.x,
      y: p.y,
      varX: p.varX,
      varY: p.varY,
      difficultyScore: p.score,
      difficultyLabel: p.label,
    }));
    exportCsv(buildApsCsv(rows), `aps_${ctx.state.metric}_${ctx.state.k}.csv`);
  });
  actions.append(pngButton, csvButton);
  ctx.content.append(actions);

  const panels = el("div", { class: "panels" });

  const difficultyTable = el("table", { class: "data" });
  difficultyTable.append(
    el("tr", {}, [
      el("th", {}, ["Dataset"]),
      el("th", {}, ["Difficulty"]),
      el("th", {}, ["Label"]),
    ]),
  );
  const byDifficulty = view.points
    .slice()
    .sort((a, b) => a.score - b.score || (a.dataset < b.dataset ? -1 : 1));
  for (const p of byDifficulty) {
    difficultyTable.append(
      el("tr", {}, [
        el("td", {}, [p.dataset]),
        el("td", {}, [p.score.toFixed(4)]),
        el("td", {}, [p.label.replace("_", " ")]),
      ]),
    );
  }
  panels.append(
    el("section", {}, [el("h3", {}, ["Difficulty quintiles"]), difficultyTable]),
  );

  const similaritySection = el("section", {});
  similaritySection.append(el("h3", {}, ["Similar datasets"]));
  const names = view.points.map((p) => p.dataset);
  const listHolder = el("div", {});
  const renderRanking = (target: string) => {
    listHolder.replaceChildren();
    const table = el("table", { class: "data" });
    table.append(
      el("tr", {}, [
        el("th", {}, ["Dataset"]),
        el("th", {}, ["Confidence"]),
        el("th", {}, ["Distance"]),
      ]),
    );
    for (const { dataset, score } of rankBySimilarity(view.points, target)) {
      table.append(
        el("tr", {}, [
          el("td", {}, [dataset]),
          el("td", {}, [score.confidence.toFixed(4)]),
          el("td", {}, [score.distance.toFixed(4)]),
        ]),
      );
    }
    listHolder.append(table);
  };
  similaritySection.append(
    labeled(
      "Anchor",
      select(
        names.map((n) => ({ value: n })),
        names[0] ?? "",
        renderRanking,
      ),
    ),
    listHolder,
  );
  if (names.length > 0) {
    renderRanking(names[0]);
  }
  panels.append(similaritySection);

  ctx.content.append(panels);
}
