/** Application shell: loads the catalog, restores view state from the
 * URL, and owns the tab bar, the dataset filter panel, the share
 * button, and the banner area. Tab content is re-rendered from scratch
 * on every state change; all network access goes through the cached
 * API client, so switching back and forth costs no extra requests.
 *
 * The checkbox panel tracks its own selection set: in ViewState an
 * empty filter canonically means "all datasets", so a fully checked
 * panel maps to the empty filter, and a fully unchecked panel is a
 * transient UI state that renders a notice instead of a tab.
 */

import { ApiClient } from "./api.js";
import type { AppContext } from "./context.js";
import { clear, el } from "./dom.js";
import {
  restoreState,
  shareQuery,
  type Catalog,
  type ViewState,
} from "./state.js";
import { renderApsTab } from "./tabs/aps.js";
import { renderCompareTab } from "./tabs/compare.js";
import { renderMetadataTab } from "./tabs/metadata.js";
import { TABS, type DatasetDto, type Tab } from "./types.js";

const TAB_TITLES: Record<Tab, string> = {
  aps: "Performance space",
  compareAlgorithms: "Compare algorithms",
  compareDatasets: "Compare datasets",
};

const TAB_RENDERERS: Record<Tab, (ctx: AppContext) => Promise<void>> = {
  aps: renderApsTab,
  compareAlgorithms: renderCompareTab,
  compareDatasets: renderMetadataTab,
};

function banner(
  holder: HTMLElement,
  message: string,
  kind: "warning" | "error",
): void {
  const note = el("div", { class: `banner ${kind}` }, [message]);
  const close = el("button", { class: "dismiss" }, ["×"]);
  close.addEventListener("click", () => note.remove());
  note.append(close);
  holder.append(note);
}

async function boot(): Promise<void> {
  const app = document.getElementById("app");
  if (!app) {
    return;
  }

  const api = new ApiClient();
  const banners = el("div", { class: "banners" });
  app.append(banners);

  let algorithms: { name: string }[];
  let datasets: DatasetDto[];
  try {
    [algorithms, datasets] = await Promise.all([
      api.getAlgorithms(),
      api.getDatasets(),
    ]);
  } catch (error) {
    banner(
      banners,
      `Could not load the catalog: ${(error as Error).message}`,
      "error",
    );
    return;
  }

  const catalog: Catalog = {
    algorithms: algorithms.map((a) => a.name),
    datasets: datasets.map((d) => d.name),
  };

  const restored = restoreState(window.location.search, catalog);
  let state: ViewState = restored.state;
  for (const warning of restored.warnings) {
    banner(banners, warning, "warning");
  }

  // checked names in the filter panel; all checked <=> empty filter
  let checked = new Set<string>(
    state.datasetFilter.size === 0 ? catalog.datasets : state.datasetFilter,
  );

  const nav = el("nav", { class: "tabs" });
  const shareButton = el("button", { class: "share" }, ["Share"]);
  const header = el("header", {}, [
    el("h1", {}, ["Dataset explorer"]),
    nav,
    shareButton,
  ]);
  const filterPanel = el("aside", { class: "filter-panel" });
  const content = el("main", { class: "tab-content" });
  app.append(header, el("div", { class: "layout" }, [filterPanel, content]));

  let generation = 0;

  const syncUrl = () => {
    window.history.replaceState(
      null,
      "",
      window.location.pathname + shareQuery(state, catalog),
    );
  };

  const ctx: AppContext = {
    api,
    catalog,
    datasets,
    get state() {
      return state;
    },
    setState(patch) {
      state = { ...state, ...patch };
      if (patch.datasetFilter !== undefined) {
        checked = new Set(
          state.datasetFilter.size === 0
            ? catalog.datasets
            : state.datasetFilter,
        );
      }
      syncUrl();
      void render();
    },
    warn(message) {
      banner(banners, message, "warning");
    },
    content,
  };

  shareButton.addEventListener("click", () => {
    const url =
      window.location.origin +
      window.location.pathname +
      shareQuery(state, catalog);
    if (navigator.clipboard) {
      void navigator.clipboard.writeText(url).then(
        () => ctx.warn(`Copied: ${url}`),
        () => window.prompt("Share this view:", url),
      );
    } else {
      window.prompt("Share this view:", url);
    }
  });

  const applyChecked = () => {
    state = {
      ...state,
      datasetFilter:
        checked.size === catalog.datasets.length
          ? new Set<string>()
          : new Set(checked),
    };
    syncUrl();
    void render();
  };

  const renderNav = () => {
    clear(nav);
    for (const tab of TABS) {
      const button = el(
        "button",
        { class: tab === state.tab ? "tab active" : "tab" },
        [TAB_TITLES[tab]],
      );
      button.addEventListener("click", () => ctx.setState({ tab }));
      nav.append(button);
    }
  };

  const renderFilter = () => {
    clear(filterPanel);
    filterPanel.append(el("h2", {}, ["Datasets"]));
    const allChecked = checked.size === catalog.datasets.length;
    const toggle = el("button", { class: "toggle-all" }, [
      allChecked ? "Deselect all" : "Select all",
    ]);
    toggle.addEventListener("click", () => {
      checked = allChecked ? new Set() : new Set(catalog.datasets);
      applyChecked();
    });
    filterPanel.append(toggle);
    const list = el("div", { class: "filter-list" });
    for (const name of catalog.datasets) {
      const box = el("input", { type: "checkbox" }) as HTMLInputElement;
      box.checked = checked.has(name);
      box.addEventListener("change", () => {
        if (box.checked) {
          checked.add(name);
        } else {
          checked.delete(name);
        }
        applyChecked();
      });
      list.append(el("label", { class: "filter-item" }, [box, name]));
    }
    filterPanel.append(list);
    filterPanel.append(
      el("p", { class: "caption" }, [
        `${checked.size} of ${catalog.datasets.length} selected`,
      ]),
    );
  };

  const render = async () => {
    const mine = ++generation;
    renderNav();
    renderFilter();
    clear(content);
    if (checked.size === 0) {
      content.append(
        el("p", { class: "notice" }, [
          "No datasets selected. Check at least one dataset in the panel.",
        ]),
      );
      return;
    }
    content.append(el("p", { class: "caption" }, ["Loading…"]));
    try {
      const scratch = el("div", {});
      const scratchCtx = { ...ctx, content: scratch } as AppContext;
      await TAB_RENDERERS[state.tab](scratchCtx);
      if (mine === generation) {
        clear(content);
        content.append(...Array.from(scratch.childNodes));
      }
    } catch (error) {
      if (mine === generation) {
        clear(content);
        banner(content, (error as Error).message, "error");
      }
    }
  };

  syncUrl();
  await render();
}

void boot();
