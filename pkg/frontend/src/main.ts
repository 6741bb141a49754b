/** Single-page shell: Explore / Edit / Dashboards tabs over one ApiClient. */

import { ApiClient } from "./api.js";
import { DashboardView } from "./dashboards.js";
import { EditorView } from "./editor.js";
import { ExplorerView } from "./explorer.js";
import type { TaxonomyDoc, TaxonomySummary } from "./types.js";

type TabName = "explore" | "edit" | "dashboards";

async function boot(): Promise<void> {
  const api = new ApiClient();
  const banner = document.getElementById("banner") as HTMLElement;
  const nav = document.getElementById("nav") as HTMLElement;
  const host = document.getElementById("view") as HTMLElement;

  const offline = (error: unknown): void => {
    banner.textContent =
      "Cannot reach the taxidma API: " + (error instanceof Error ? error.message : String(error));
    banner.hidden = false;
  };

  let taxonomies: TaxonomySummary[];
  const docs = new Map<string, TaxonomyDoc>();
  try {
    taxonomies = await api.taxonomies();
    for (const summary of taxonomies) {
      docs.set(summary.id, await api.taxonomy(summary.id));
    }
  } catch (error) {
    offline(error);
    return;
  }
  banner.hidden = true;

  const explorer = new ExplorerView(api, taxonomies);
  const editor = new EditorView(api, taxonomies, docs);
  const dashboards = new DashboardView(api, taxonomies, docs, (taxonomy, path) => {
    void switchTo("explore");
    void explorer.show(taxonomy, path.split("/").pop() ?? path);
  });

  const views: Record<TabName, { root: HTMLElement; show: () => Promise<void> }> = {
    explore: { root: explorer.root, show: () => explorer.show() },
    edit: { root: editor.root, show: () => editor.show() },
    dashboards: { root: dashboards.root, show: () => dashboards.show() },
  };

  const buttons = new Map<TabName, HTMLButtonElement>();
  const switchTo = async (tab: TabName): Promise<void> => {
    host.textContent = "";
    host.appendChild(views[tab].root);
    for (const [name, button] of buttons) {
      button.classList.toggle("active", name === tab);
    }
    try {
      await views[tab].show();
      banner.hidden = true;
    } catch (error) {
      offline(error);
    }
  };

  const labels: Record<TabName, string> = {
    explore: "Explore",
    edit: "Edit record",
    dashboards: "Dashboards",
  };
  for (const tab of Object.keys(labels) as TabName[]) {
    const button = document.createElement("button");
    button.textContent = labels[tab];
    button.onclick = () => void switchTo(tab);
    buttons.set(tab, button);
    nav.appendChild(button);
  }

  await switchTo("explore");
}

void boot();
