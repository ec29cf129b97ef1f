/** Dataset-comparison tab: the metadata table with sortable and
 * toggleable columns. The ratio and interaction-mean cells carry info
 * boxes giving the risk band's label, description, and cause; the
 * numbers themselves are rendered plainly, without severity colors, so
 * the bands inform rather than alarm.
 */

import { exportCsv } from "../chart.js";
import type { AppContext } from "../context.js";
import { buildMetadataCsv } from "../csv.js";
import { el } from "../dom.js";
import { pyFloatRepr } from "../floatRepr.js";
import { filteredDatasets } from "../state.js";
import type { DatasetDto, RiskBandDto } from "../types.js";

type CellValue = string | number | null;

interface Column {
  key: string;
  title: string;
  value: (d: DatasetDto) => CellValue;
  band?: (d: DatasetDto) => RiskBandDto;
  defaultVisible: boolean;
}

const COLUMNS: Column[] = [
  { key: "users", title: "Users", value: (d) => d.numUsers, defaultVisible: true },
  { key: "items", title: "Items", value: (d) => d.numItems, defaultVisible: true },
  {
    key: "interactions",
    title: "Interactions",
    value: (d) => d.numInteractions,
    defaultVisible: true,
  },
  {
    key: "ratio",
    title: "User-item ratio",
    value: (d) => d.userItemRatio,
    band: (d) => d.risk.userItemRatio,
    defaultVisible: true,
  },
  { key: "density", title: "Density", value: (d) => d.density, defaultVisible: true },
  {
    key: "meanPerUser",
    title: "Mean per user",
    value: (d) => d.meanPerUser,
    band: (d) => d.risk.meanPerUser,
    defaultVisible: true,
  },
  {
    key: "meanPerItem",
    title: "Mean per item",
    value: (d) => d.meanPerItem,
    band: (d) => d.risk.meanPerItem,
    defaultVisible: true,
  },
  { key: "maxPerUser", title: "Max per user", value: (d) => d.maxPerUser, defaultVisible: false },
  { key: "minPerUser", title: "Min per user", value: (d) => d.minPerUser, defaultVisible: false },
  { key: "maxPerItem", title: "Max per item", value: (d) => d.maxPerItem, defaultVisible: false },
  { key: "minPerItem", title: "Min per item", value: (d) => d.minPerItem, defaultVisible: false },
  { key: "feedback", title: "Feedback", value: (d) => d.feedback, defaultVisible: false },
];

function formatCell(value: CellValue): string {
  if (value === null) {
    return "";
  }
  if (typeof value === "number") {
    return Number.isInteger(value) && !String(value).includes("e")
      ? String(value)
      : pyFloatRepr(value);
  }
  return value;
}

function infoBox(band: RiskBandDto): HTMLElement {
  const details = el("details", { class: "info-box" });
  details.append(
    el("summary", { title: `${band.label}: ${band.description}` }, ["i"]),
    el("div", { class: "info-body" }, [
      el("strong", {}, [band.label]),
      el("p", {}, [band.description]),
      el("p", { class: "cause" }, [band.cause]),
    ]),
  );
  return details;
}

export async function renderMetadataTab(ctx: AppContext): Promise<void> {
  const names = new Set(filteredDatasets(ctx.state, ctx.catalog));
  const rows = ctx.datasets.filter((d) => names.has(d.name));

  const visible = new Set(
    COLUMNS.filter((c) => c.defaultVisible).map((c) => c.key),
  );
  let sortKey: string | null = null;
  let sortAsc = true;
  let ordered = rows.slice();

  const toggles = el("div", { class: "controls wrap" });
  for (const column of COLUMNS) {
    const box = el("input", { type: "checkbox" }) as HTMLInputElement;
    box.checked = visible.has(column.key);
    box.addEventListener("change", () => {
      if (box.checked) {
        visible.add(column.key);
      } else {
        visible.delete(column.key);
      }
      renderTable();
    });
    toggles.append(el("label", { class: "toggle" }, [box, column.title]));
  }
  ctx.content.append(toggles);

  const actions = el("div", { class: "actions" });
  const csvButton = el("button", {}, ["Export CSV"]);
  csvButton.addEventListener("click", () =>
    exportCsv(buildMetadataCsv(ordered), "metadata.csv"),
  );
  actions.append(csvButton);
  ctx.content.append(actions);

  const holder = el("div", { class: "table-holder" });
  ctx.content.append(holder);

  const applySort = () => {
    ordered = rows.slice();
    if (sortKey !== null) {
      const column = COLUMNS.find((c) => c.key === sortKey)!;
      const dir = sortAsc ? 1 : -1;
      ordered.sort((a, b) => {
        const va = column.value(a);
        const vb = column.value(b);
        if (va === null) return vb === null ? 0 : 1;
        if (vb === null) return -1;
        if (va < vb) return -dir;
        if (va > vb) return dir;
        return 0;
      });
    }
  };

  const renderTable = () => {
    applySort();
    holder.replaceChildren();
    const shown = COLUMNS.filter((c) => visible.has(c.key));
    const table = el("table", { class: "data metadata" });
    const headRow = el("tr", {});
    const nameHead = el("th", { class: "sortable" }, ["Dataset"]);
    nameHead.addEventListener("click", () => {
      sortKey = null;
      sortAsc = true;
      renderTable();
    });
    headRow.append(nameHead);
    for (const column of shown) {
      const mark =
        sortKey === column.key ? (sortAsc ? " ▲" : " ▼") : "";
      const head = el("th", { class: "sortable" }, [column.title + mark]);
      head.addEventListener("click", () => {
        sortAsc = sortKey === column.key ? !sortAsc : true;
        sortKey = column.key;
        renderTable();
      });
      headRow.append(head);
    }
    table.append(headRow);

    for (const dataset of ordered) {
      const row = el("tr", {});
      row.append(el("td", {}, [dataset.name]));
      for (const column of shown) {
        const cell = el("td", {}, [formatCell(column.value(dataset))]);
        if (column.band) {
          cell.append(infoBox(column.band(dataset)));
        }
        row.append(cell);
      }
      table.append(row);
    }
    holder.append(table);
  };

  renderTable();
}
