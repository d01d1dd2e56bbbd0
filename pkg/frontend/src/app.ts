/** Minimal DOM dashboard: palette tree on the left, workspace in the middle,
 * validation report on the right. Blocks are rendered as nested lists; the
 * exchange format is always the schema document. */

import { ApiClient, VersionConflictError, saveWorkspace } from "./api.js";
import {
  eventsUnder,
  paletteFromOntology,
  type BlockPalette,
  type CategoryNode,
} from "./palette.js";
import { importSkeleton } from "./skeleton.js";
import { LiveValidator } from "./validation.js";
import {
  addStep,
  emptyWorkspace,
  schemaToWorkspace,
  type Workspace,
} from "./workspace.js";

const SERVER = (window as { SCHEMAKIT_SERVER?: string }).SCHEMAKIT_SERVER ??
  "http://127.0.0.1:8321";

const client = new ApiClient(SERVER);
let workspace: Workspace = emptyWorkspace();
const validator = new LiveValidator((doc) => client.validate(doc));

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderCategory(node: CategoryNode, palette: BlockPalette): HTMLElement {
  const item = el("li", "category");
  const header = el("details");
  const summary = el("summary", "category-name",
    `${node.id} (${eventsUnder(node).length})`);
  header.appendChild(summary);
  const list = el("ul", "category-members");
  for (const child of node.children) {
    list.appendChild(renderCategory(child, palette));
  }
  for (const event of node.events) {
    const block = el("li", "event-block", event.label);
    block.title = event.type;
    block.addEventListener("click", () => {
      addStep(workspace, {
        id: `step-${workspace.steps.length + 1}`,
        type: event.type,
        description: "",
        sockets: {},
      });
      renderWorkspace();
      validator.schedule(workspace);
    });
    list.appendChild(block);
  }
  header.appendChild(list);
  item.appendChild(header);
  return item;
}

function renderPalette(palette: BlockPalette): void {
  const root = document.getElementById("palette")!;
  root.replaceChildren();
  const tree = el("ul", "palette-tree");
  for (const category of palette.categories) {
    tree.appendChild(renderCategory(category, palette));
  }
  root.appendChild(tree);
}

function renderWorkspace(): void {
  const root = document.getElementById("workspace")!;
  root.replaceChildren();
  root.appendChild(el("h2", undefined, workspace.name || workspace.schemaId));
  const steps = el("ul", "steps");
  for (const step of workspace.steps) {
    const li = el("li", "step-block");
    if (validator.highlights.has(step.id)) {
      li.classList.add("highlight");
    }
    li.appendChild(el("span", "step-type", step.type));
    li.appendChild(el("span", "step-desc", step.description || "(no description)"));
    const sockets = el("ul", "sockets");
    for (const [role, ids] of Object.entries(step.sockets)) {
      sockets.appendChild(el("li", "socket", `${role}: ${ids.join(", ")}`));
    }
    li.appendChild(sockets);
    steps.appendChild(li);
  }
  root.appendChild(steps);
}

function renderReport(): void {
  const root = document.getElementById("report")!;
  root.replaceChildren();
  const report = workspace.lastReport;
  if (!report) {
    root.appendChild(el("p", undefined, "not validated yet"));
    return;
  }
  root.appendChild(el("p", report.ok ? "ok" : "invalid",
    report.ok ? "schema is valid" : "schema has errors"));
  const list = el("ul", "issues");
  for (const issue of report.issues) {
    list.appendChild(el("li", issue.severity,
      `[${issue.severity}] ${issue.location}: ${issue.message}`));
  }
  root.appendChild(list);
}

async function save(draft: boolean): Promise<void> {
  try {
    const version = await saveWorkspace(client, workspace, { draft });
    renderStatus(`saved version ${version}${draft ? " (draft)" : ""}`);
  } catch (error) {
    if (error instanceof VersionConflictError) {
      const reload = window.confirm(
        "Someone else changed this schema. Reload their version (discarding " +
        "your edits)?");
      if (reload) {
        const { version, schema } = await client.getSchema(workspace.schemaId);
        workspace = schemaToWorkspace(schema, version);
        renderWorkspace();
      }
      return;
    }
    renderStatus(String(error));
  }
}

function renderStatus(text: string): void {
  document.getElementById("status")!.textContent = text;
}

async function bootstrap(): Promise<void> {
  const ontology = await client.getOntology();
  renderPalette(paletteFromOntology(ontology));
  validator.onReport(() => {
    renderWorkspace();
    renderReport();
  });
  document.getElementById("save")!.addEventListener("click", () => void save(false));
  document.getElementById("save-draft")!
    .addEventListener("click", () => void save(true));
  const skeletonInput = document.getElementById("skeleton-id") as HTMLInputElement;
  document.getElementById("import-skeleton")!.addEventListener("click", () => {
    void importSkeleton(client, skeletonInput.value).then((ws) => {
      workspace = ws;
      renderWorkspace();
      void validator.run(workspace);
    });
  });
  renderWorkspace();
  renderReport();
}

void bootstrap();
