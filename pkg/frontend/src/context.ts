/** Objects the tab renderers share: API access, the catalog, the
 * current view state, and hooks back into the shell for state changes
 * and banners.
 */

import type { ApiClient } from "./api.js";
import type { Catalog, ViewState } from "./state.js";
import type { DatasetDto } from "./types.js";

export interface AppContext {
  api: ApiClient;
  catalog: Catalog;
  /** Full dataset metadata, index-aligned with catalog.datasets. */
  datasets: DatasetDto[];
  state: ViewState;
  /** Merge a partial state change, sync the URL, and re-render. */
  setState(patch: Partial<ViewState>): void;
  /** Show a dismissible banner. */
  warn(message: string): void;
  /** Container the active tab renders into. */
  content: HTMLElement;
}
