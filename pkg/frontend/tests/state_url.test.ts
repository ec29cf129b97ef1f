/** Share-URL round-trip: 500 randomized view states must survive
 * serialize -> restore identically, the default state serializes to
 * "?tab=aps" alone, and malformed parameters fall back to defaults
 * with warnings instead of failing.
 */

import { describe, expect, it } from "vitest";

import { SplitMix64 } from "../src/rng.js";
import {
  defaultState,
  restoreState,
  shareQuery,
  statesEqual,
  type Catalog,
  type ViewState,
} from "../src/state.js";
import { K_VALUES, METRICS, TABS } from "../src/types.js";

const catalog: Catalog = {
  algorithms: ["BPR", "CDAE", "ItemKNN", "MultiVAE", "Pop"],
  datasets: [
    "Amazon-Ratings",
    "CiaoDVD",
    "Douban-Short",
    "Epinions",
    "FilmTrust",
    "Jester-4",
    "MovieLens-100K",
    "with space",
    "odd,comma",
  ],
};

function randomState(rng: SplitMix64): ViewState {
  const pick = <T>(items: readonly T[]): T =>
    items[rng.nextBelow(items.length)];
  const filter = new Set<string>();
  // empty filter (= all datasets) must stay a common case
  if (rng.nextBelow(3) > 0) {
    const count = 1 + rng.nextBelow(catalog.datasets.length);
    for (let i = 0; i < count; i++) {
      filter.add(pick(catalog.datasets));
    }
    if (filter.size === catalog.datasets.length) {
      filter.clear();
    }
  }
  return {
    tab: pick(TABS),
    metric: pick(METRICS),
    k: pick(K_VALUES),
    alg1: pick(catalog.algorithms),
    alg2: pick(catalog.algorithms),
    datasetFilter: filter,
  };
}

describe("share-URL round trip", () => {
  it("restores 500 randomized states identically", () => {
    const rng = new SplitMix64(2025);
    for (let i = 0; i < 500; i++) {
      const state = randomState(rng);
      const query = shareQuery(state, catalog);
      const { state: restored, warnings } = restoreState(query, catalog);
      expect(warnings).toEqual([]);
      expect(statesEqual(restored, state)).toBe(true);
    }
  });

  it("serializes the default state as ?tab=aps only", () => {
    expect(shareQuery(defaultState(catalog), catalog)).toBe("?tab=aps");
  });

  it("restores ?tab=compareAlgorithms to the comparison tab", () => {
    const { state, warnings } = restoreState("?tab=compareAlgorithms", catalog);
    expect(state.tab).toBe("compareAlgorithms");
    expect(warnings).toEqual([]);
    expect(statesEqual(state, { ...defaultState(catalog), tab: "compareAlgorithms" })).toBe(
      true,
    );
  });

  it("defaults alg1/alg2 to the first two algorithms alphabetically", () => {
    const state = defaultState(catalog);
    expect(state.alg1).toBe("BPR");
    expect(state.alg2).toBe("CDAE");
    expect(state.metric).toBe("ndcg");
    expect(state.k).toBe(1);
  });
});

describe("malformed parameters", () => {
  it("falls back to the default metric with a warning", () => {
    const { state, warnings } = restoreState("?tab=aps&metric=mrr", catalog);
    expect(state.metric).toBe("ndcg");
    expect(warnings).toHaveLength(1);
    expect(warnings[0]).toContain("mrr");
  });

  it("falls back on unsupported K and unknown tab", () => {
    const { state, warnings } = restoreState("?tab=nope&k=7", catalog);
    expect(state.tab).toBe("aps");
    expect(state.k).toBe(1);
    expect(warnings).toHaveLength(2);
  });

  it("falls back on non-numeric K", () => {
    const { state, warnings } = restoreState("?k=abc", catalog);
    expect(state.k).toBe(1);
    expect(warnings).toHaveLength(1);
  });

  it("ignores unknown algorithms and datasets with warnings", () => {
    const { state, warnings } = restoreState(
      "?alg1=NoSuchAlg&dataset=NoSuchDataset&dataset=FilmTrust",
      catalog,
    );
    expect(state.alg1).toBe("BPR");
    expect([...state.datasetFilter]).toEqual(["FilmTrust"]);
    expect(warnings).toHaveLength(2);
  });

  it("keeps URL-encoded names intact through the round trip", () => {
    const state: ViewState = {
      ...defaultState(catalog),
      datasetFilter: new Set(["with space", "odd,comma"]),
    };
    const query = shareQuery(state, catalog);
    const { state: restored, warnings } = restoreState(query, catalog);
    expect(warnings).toEqual([]);
    expect(statesEqual(restored, state)).toBe(true);
  });
});
