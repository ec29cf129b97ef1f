/** View state and its share-URL serialization.
 *
 * The whole UI renders from one ViewState. Share URLs are plain query
 * strings on the app path: parameters equal to their defaults are
 * omitted so the canonical default URL is just "?tab=aps", and
 * restoring is total -- malformed or unknown values fall back to the
 * default with a human-readable warning instead of failing.
 */

import {
  isKValue,
  isMetric,
  isTab,
  type KValue,
  type Metric,
  type Tab,
} from "./types.js";

export interface Catalog {
  /** Algorithm names in served order (case-insensitive alphabetical). */
  algorithms: string[];
  /** Dataset names in served order. */
  datasets: string[];
}

export interface ViewState {
  tab: Tab;
  metric: Metric;
  k: KValue;
  alg1: string;
  alg2: string;
  /** Dataset names to keep; empty means all datasets. */
  datasetFilter: Set<string>;
}

export function defaultState(catalog: Catalog): ViewState {
  return {
    tab: "aps",
    metric: "ndcg",
    k: 1,
    alg1: catalog.algorithms[0] ?? "",
    alg2: catalog.algorithms[1] ?? "",
    datasetFilter: new Set(),
  };
}

/** Query string for the state, leading "?" included. The tab parameter
 * is always present; everything else appears only when non-default. */
export function shareQuery(state: ViewState, catalog: Catalog): string {
  const defaults = defaultState(catalog);
  const params = new URLSearchParams();
  params.set("tab", state.tab);
  if (state.metric !== defaults.metric) {
    params.set("metric", state.metric);
  }
  if (state.k !== defaults.k) {
    params.set("k", String(state.k));
  }
  if (state.alg1 !== defaults.alg1) {
    params.set("alg1", state.alg1);
  }
  if (state.alg2 !== defaults.alg2) {
    params.set("alg2", state.alg2);
  }
  for (const name of [...state.datasetFilter].sort()) {
    params.append("dataset", name);
  }
  return "?" + params.toString();
}

export interface RestoreResult {
  state: ViewState;
  /** One entry per parameter that had to fall back to its default. */
  warnings: string[];
}

export function restoreState(query: string, catalog: Catalog): RestoreResult {
  const params = new URLSearchParams(query);
  const state = defaultState(catalog);
  const warnings: string[] = [];

  const tab = params.get("tab");
  if (tab !== null) {
    if (isTab(tab)) {
      state.tab = tab;
    } else {
      warnings.push(`unknown tab "${tab}", showing the performance space`);
    }
  }

  const metric = params.get("metric");
  if (metric !== null) {
    if (isMetric(metric)) {
      state.metric = metric;
    } else {
      warnings.push(`unknown metric "${metric}", using ${state.metric}`);
    }
  }

  const k = params.get("k");
  if (k !== null) {
    const parsed = Number(k);
    if (Number.isInteger(parsed) && isKValue(parsed)) {
      state.k = parsed;
    } else {
      warnings.push(`unsupported K "${k}", using ${state.k}`);
    }
  }

  for (const field of ["alg1", "alg2"] as const) {
    const name = params.get(field);
    if (name !== null) {
      if (catalog.algorithms.includes(name)) {
        state[field] = name;
      } else {
        warnings.push(`unknown algorithm "${name}", using ${state[field]}`);
      }
    }
  }

  for (const name of params.getAll("dataset")) {
    if (catalog.datasets.includes(name)) {
      state.datasetFilter.add(name);
    } else {
      warnings.push(`unknown dataset "${name}" ignored`);
    }
  }

  return { state, warnings };
}

/** Datasets the filter keeps, in catalog order. */
export function filteredDatasets(state: ViewState, catalog: Catalog): string[] {
  if (state.datasetFilter.size === 0) {
    return catalog.datasets.slice();
  }
  return catalog.datasets.filter((name) => state.datasetFilter.has(name));
}

export function statesEqual(a: ViewState, b: ViewState): boolean {
  if (
    a.tab !== b.tab ||
    a.metric !== b.metric ||
    a.k !== b.k ||
    a.alg1 !== b.alg1 ||
    a.alg2 !== b.alg2 ||
    a.datasetFilter.size !== b.datasetFilter.size
  ) {
    return false;
  }
  for (const name of a.datasetFilter) {
    if (!b.datasetFilter.has(name)) {
      return false;
    }
  }
  return true;
}
