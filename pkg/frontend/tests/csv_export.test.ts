/** Export agreement: the client comparison CSV must equal the server
 * CLI's output byte for byte for the pinned fixture state, and every
 * region cell must re-derive from its score columns.
 */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { classifyRegion } from "../src/analysis.js";
import {
  buildApsCsv,
  buildComparisonCsv,
  buildMetadataCsv,
} from "../src/csv.js";
import type { DatasetDto } from "../src/types.js";

interface ComparisonState {
  metric: string;
  k: number;
  alg1: string;
  alg2: string;
  rows: Array<{ dataset: string; score1: number; score2: number }>;
}

const state: ComparisonState = JSON.parse(
  readFileSync(new URL("../fixtures/comparison_state.json", import.meta.url), "utf-8"),
);
const cliCsv = readFileSync(
  new URL("../fixtures/comparison_cli.csv", import.meta.url),
  "utf-8",
);

describe("comparison CSV", () => {
  it("matches the CLI export byte for byte", () => {
    expect(buildComparisonCsv(state.rows)).toBe(cliCsv);
  });

  it("has a region column re-derivable from the score columns", () => {
    const lines = cliCsv.trimEnd().split("\n").slice(1);
    expect(lines.length).toBe(state.rows.length);
    for (const line of lines) {
      const [, s1, s2, region] = line.split(",");
      expect(classifyRegion(Number(s1), Number(s2))).toBe(region);
    }
  });

  it("quotes names containing delimiters and doubles quote characters", () => {
    const csv = buildComparisonCsv([
      { dataset: 'with,comma "quoted"', score1: 0.6, score2: 0.0 },
    ]);
    expect(csv).toBe(
      'dataset,score_alg1,score_alg2,region\n"with,comma ""quoted""",0.6,0.0,alg1_wins\n',
    );
  });
});

describe("performance-space CSV", () => {
  it("renders floats with Python repr semantics", () => {
    const csv = buildApsCsv([
      {
        dataset: "beta",
        x: 0.1,
        y: -0.25,
        varX: 1e-7,
        varY: 0.0,
        difficultyScore: 0.0,
        difficultyLabel: "very_hard",
      },
    ]);
    expect(csv).toBe(
      "dataset,x,y,var_x,var_y,difficulty_score,difficulty_label\n" +
        "beta,0.1,-0.25,1e-07,0.0,0.0,very_hard\n",
    );
  });
});

describe("metadata CSV", () => {
  it("writes the full schema with blank unknown extremes", () => {
    const dataset: DatasetDto = {
      id: 1,
      name: "FilmTrust",
      numUsers: 1208,
      numItems: 406,
      numInteractions: 31668,
      userItemRatio: 2.98,
      density: 0.0645,
      meanPerUser: 26.21,
      meanPerItem: 78.0,
      maxPerUser: null,
      minPerUser: null,
      maxPerItem: null,
      minPerItem: null,
      feedback: "explicit",
      risk: {
        userItemRatio: {
          bandIndex: 6,
          label: "2.08 - 5.16",
          description: "Very user-heavy",
          cause: "Too few items for many users",
        },
        meanPerUser: {
          bandIndex: 4,
          label: "20.77 - 28.96",
          description:
            "Few items with a high number of Interactions, which could lead to popularity bias",
          cause: "Some users dominate the interaction space",
        },
        meanPerItem: {
          bandIndex: 5,
          label: "> 66.22",
          description: "placeholder",
          cause: "placeholder",
        },
      },
    };
    const csv = buildMetadataCsv([dataset]);
    const lines = csv.trimEnd().split("\n");
    expect(lines[0].startsWith("dataset,users,items,interactions,")).toBe(true);
    expect(lines[0].endsWith("risk_mean_per_item,risk_mean_per_item_cause")).toBe(
      true,
    );
    expect(lines[1]).toContain("FilmTrust,1208,406,31668,2.98,0.0645,26.21,78.0");
    expect(lines[1]).toContain(",,,,");
    expect(lines[1]).toContain("explicit");
    expect(lines[1]).toContain("Very user-heavy");
    expect(lines[1]).toContain(
      '"Few items with a high number of Interactions, which could lead to popularity bias"',
    );
  });
});
