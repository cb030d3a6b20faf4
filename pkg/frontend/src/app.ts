/**
 * Main window: load/save .sln files client-side, eight tabs over the
 * active website entry, instant search, and the storage-channel link to
 * the Image Editor window.  No network traffic ever; files come in
 * through the file picker (FileReader) and leave as Blob downloads.
 */

import { pollHandoffs } from "./channel.js";
import { Contact, Dataset, Note, RelatedUrl, TodoItem, WebsiteEntry } from "./model.js";
import { Session } from "./session.js";
import { filterRows } from "./search.js";

let session = Session.blank();
let statusNote = "new notebook";

const app = document.querySelector<HTMLDivElement>("#app")!;

const TABS = [
  "Main", "Related URLs", "Contacts", "Datasets", "Images", "Videos", "TODO", "Other Notes",
] as const;
let activeTab: (typeof TABS)[number] = "Main";
const tabFilters = new Map<string, string>();

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function render(): void {
  const entry = session.active;
  app.innerHTML = `
    <header>
      <button id="btn-new">New</button>
      <button id="btn-load">Load</button>
      <button id="btn-save">Save</button>
      <input id="main-search" placeholder="search website entries" autocomplete="off">
      <span id="status">${esc(statusNote)}${session.dirty ? " (modified)" : ""}</span>
      <input type="file" id="file-input" accept=".sln,application/xml" hidden>
    </header>
    <ul id="search-results" hidden></ul>
    <nav>${TABS.map((tab) =>
      `<button class="tab${tab === activeTab ? " active" : ""}" data-tab="${tab}">${tab}</button>`,
    ).join("")}</nav>
    <main id="tab-body"></main>
  `;
  document.querySelector("#btn-new")!.addEventListener("click", () => {
    session = Session.blank();
    statusNote = "new notebook";
    render();
  });
  document.querySelector("#btn-load")!.addEventListener("click", () =>
    document.querySelector<HTMLInputElement>("#file-input")!.click(),
  );
  document.querySelector("#file-input")!.addEventListener("change", onFileChosen);
  document.querySelector("#btn-save")!.addEventListener("click", onSave);
  for (const button of app.querySelectorAll<HTMLButtonElement>("nav .tab")) {
    button.addEventListener("click", () => {
      activeTab = button.dataset.tab as typeof activeTab;
      render();
    });
  }
  const search = document.querySelector<HTMLInputElement>("#main-search")!;
  search.addEventListener("input", () => onSearch(search.value));

  renderTab(entry);
}

function onFileChosen(event: Event): void {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  const reader = new FileReader();
  reader.onload = () => {
    const bytes = new Uint8Array(reader.result as ArrayBuffer);
    const result = Session.load(bytes);
    if (result.ok) {
      session = result.session;
      statusNote = `${file.name}: ${session.notebook.websites.length} website entries`;
      activeTab = "Main";
    } else {
      session = Session.blank();
      statusNote = `${file.name} rejected`;
      renderFindings(result.findings, result.error);
      return;
    }
    render();
  };
  reader.readAsArrayBuffer(file);
}

function renderFindings(findings: { severity: string; ruleId: string; path: string; message: string }[],
                        error?: string): void {
  render();
  const body = document.querySelector("#tab-body")!;
  body.innerHTML = `
    <h2>File rejected</h2>
    ${error ? `<p>${esc(error)}</p>` : ""}
    <table><tr><th>Severity</th><th>Rule</th><th>Path</th><th>Message</th></tr>
    ${findings.map((f) =>
      `<tr><td>${f.severity}</td><td>${f.ruleId}</td><td>${esc(f.path)}</td><td>${esc(f.message)}</td></tr>`,
    ).join("")}
    </table>`;
}

function onSave(): void {
  const bytes = session.saveBytes();
  const blob = new Blob([bytes.buffer as ArrayBuffer], { type: "application/xml" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "notebook.sln";
  link.click();
  setTimeout(() => URL.revokeObjectURL(link.href), 0);
  session.dirty = false;
  statusNote = "saved";
  render();
}

function onSearch(text: string): void {
  const list = document.querySelector<HTMLUListElement>("#search-results")!;
  const hits = session.search(text);
  list.hidden = false;
  list.innerHTML = hits.map((hit) => {
    const site = session.notebook.websites[hit.entry];
    return `<li data-entry="${hit.entry}">${esc(site.name)} <small>(${hit.field})</small></li>`;
  }).join("") || "<li><em>no matches</em></li>";
  for (const item of list.querySelectorAll<HTMLLIElement>("li[data-entry]")) {
    item.addEventListener("click", () => {
      session.setActive(Number(item.dataset.entry));
      render();
    });
  }
}

interface Column<T> {
  label: string;
  get(row: T): string;
  set?(row: T, value: string): T;
}

function renderTab(entry: WebsiteEntry | null): void {
  const body = document.querySelector<HTMLElement>("#tab-body")!;
  if (activeTab === "Main") return renderMain(body, entry);
  if (!entry) {
    body.innerHTML = "<p>No active website entry. Create one on the Main tab.</p>";
    return;
  }
  switch (activeTab) {
    case "Related URLs":
      return renderRows(body, "related", entry.related, [
        { label: "URL", get: (r: RelatedUrl) => r.value, set: (r, v) => ({ ...r, value: v }) },
        { label: "Notes", get: (r) => r.notes, set: (r, v) => ({ ...r, notes: v }) },
      ], () => ({ value: "http://", notes: "" }));
    case "Contacts":
      return renderRows(body, "contacts", entry.contacts, [
        { label: "Name", get: (r: Contact) => r.name, set: (r, v) => ({ ...r, name: v }) },
        { label: "Surname", get: (r) => r.surname, set: (r, v) => ({ ...r, surname: v }) },
        { label: "Email", get: (r) => r.email, set: (r, v) => ({ ...r, email: v }) },
        { label: "Webpage", get: (r) => r.webpage, set: (r, v) => ({ ...r, webpage: v }) },
        { label: "Notes", get: (r) => r.notes, set: (r, v) => ({ ...r, notes: v }) },
      ], () => ({ name: "New", surname: "Contact", email: "", webpage: "", notes: "" }));
    case "Datasets":
      return renderRows(body, "datasets", entry.datasets, [
        { label: "Name", get: (r: Dataset) => r.name, set: (r, v) => ({ ...r, name: v }) },
        { label: "Notes", get: (r) => r.notes, set: (r, v) => ({ ...r, notes: v }) },
        { label: "Content", get: (r) => `${r.content.length} chars`, set: (r, v) => ({ ...r, content: v }) },
      ], () => ({ name: "dataset", notes: "", content: "" }));
    case "Images":
      return renderImages(body, entry);
    case "Videos":
      body.innerHTML = `
        <p><em>Video storage is part of the file format, but browsers do not yet
        offer dependable in-page video editing; this tab activates once they do.</em></p>
        <table><tr><th>Name</th><th>Notes</th><th>Media</th></tr>
        ${entry.videos.map((v) =>
          `<tr><td>${esc(v.name)}</td><td>${esc(v.notes)}</td><td>${v.media ? "embedded" : "none"}</td></tr>`,
        ).join("")}</table>`;
      return;
    case "TODO":
      return renderRows(body, "todos", entry.todos, [
        { label: "Task", get: (r: TodoItem) => r.text, set: (r, v) => ({ ...r, text: v }) },
        { label: "Due", get: (r) => r.dueDate ?? "", set: (r, v) => ({ ...r, dueDate: v || null }) },
        { label: "Done", get: (r) => (r.done ? "yes" : "no"), set: (r, v) => ({ ...r, done: v === "yes" }) },
      ], () => ({ text: "new task", dueDate: null, done: false }));
    case "Other Notes":
      return renderRows(body, "otherNotes", entry.otherNotes, [
        { label: "Text", get: (r: Note) => r.text, set: (r, v) => ({ ...r, text: v }) },
      ], () => ({ text: "" }));
  }
}

function renderMain(body: HTMLElement, entry: WebsiteEntry | null): void {
  if (!entry) {
    body.innerHTML = `
      <p>No website entries yet.</p>
      <button id="btn-add-site">Add website entry</button>`;
    body.querySelector("#btn-add-site")!.addEventListener("click", addWebsiteFlow);
    return;
  }
  body.innerHTML = `
    <table>
      <tr><th>Website Name</th><th>URL Location</th><th>Purpose</th><th>Date</th></tr>
      <tr>
        <td><input id="f-name" value="${esc(entry.name)}"></td>
        <td><input id="f-location" value="${esc(entry.location)}"></td>
        <td><input id="f-purpose" value="${esc(entry.purpose)}"></td>
        <td><input id="f-date" value="${esc(entry.date)}"></td>
      </tr>
    </table>
    <button id="btn-apply">Apply</button>
    <button id="btn-add-site">Add website entry</button>
    <button id="btn-del-site">Delete this entry</button>
    <p id="form-error" class="error"></p>`;
  body.querySelector("#btn-apply")!.addEventListener("click", () => {
    try {
      session.updateActive({
        name: val("#f-name"), location: val("#f-location"),
        purpose: val("#f-purpose"), date: val("#f-date"),
      });
      render();
    } catch (error) {
      body.querySelector("#form-error")!.textContent = (error as Error).message;
    }
  });
  body.querySelector("#btn-add-site")!.addEventListener("click", addWebsiteFlow);
  body.querySelector("#btn-del-site")!.addEventListener("click", () => {
    session.deleteActive();
    render();
  });
}

function val(selector: string): string {
  return document.querySelector<HTMLInputElement>(selector)!.value;
}

function addWebsiteFlow(): void {
  const name = window.prompt("Website name?");
  if (!name) return;
  const location = window.prompt("URL location?") ?? "";
  const date = window.prompt("Date (YYYY-MM-DD)?", new Date().toISOString().slice(0, 10)) ?? "";
  try {
    session.addWebsite({
      name, location, date, purpose: "",
      related: [], contacts: [], datasets: [], images: [],
      videos: [], todos: [], otherNotes: [],
    });
    session.setActive(session.notebook.websites.length - 1);
    render();
  } catch (error) {
    window.alert((error as Error).message);
  }
}

function renderRows<T extends object>(
  body: HTMLElement,
  key: "related" | "contacts" | "datasets" | "todos" | "otherNotes",
  rows: readonly T[],
  columns: Column<T>[],
  makeRow: () => T,
): void {
  const filter = tabFilters.get(activeTab) ?? "";
  const searchable = rows.map((row, i) => {
    const cells: Record<string, string> = { _i: String(i) };
    columns.forEach((col) => { cells[col.label] = col.get(row); });
    return cells;
  });
  const visible = filterRows(searchable, filter);
  body.innerHTML = `
    <input id="tab-filter" placeholder="filter rows" value="${esc(filter)}" autocomplete="off">
    <table>
      <tr>${columns.map((c) => `<th>${c.label}</th>`).join("")}<th></th></tr>
      ${visible.map((cells) => `
        <tr data-i="${cells._i}">
          ${columns.map((c) => `<td>${esc(cells[c.label])}</td>`).join("")}
          <td>
            <button class="edit" data-i="${cells._i}">Edit Row</button>
            <button class="del" data-i="${cells._i}">Delete Row</button>
          </td>
        </tr>`).join("")}
    </table>
    <button id="btn-add-row">Add Row</button>
    <p id="row-error" class="error"></p>`;

  const filterBox = body.querySelector<HTMLInputElement>("#tab-filter")!;
  filterBox.addEventListener("input", () => {
    tabFilters.set(activeTab, filterBox.value);
    render();
  });
  body.querySelector("#btn-add-row")!.addEventListener("click", () => {
    editRowFlow(key, columns, makeRow(), (row) => {
      (session as any)[addMethod(key)](row);
    });
  });
  for (const button of body.querySelectorAll<HTMLButtonElement>("button.edit")) {
    button.addEventListener("click", () => {
      const index = Number(button.dataset.i);
      editRowFlow(key, columns, rows[index], (row) => session.editRow(key, index, row as any));
    });
  }
  for (const button of body.querySelectorAll<HTMLButtonElement>("button.del")) {
    button.addEventListener("click", () => {
      session.deleteRow(key, Number(button.dataset.i));
      render();
    });
  }
}

function addMethod(key: string): string {
  return {
    related: "addRelated", contacts: "addContact", datasets: "addDataset",
    todos: "addTodo", otherNotes: "addNote",
  }[key]!;
}

function editRowFlow<T>(
  key: string, columns: Column<T>[], initial: T, commit: (row: T) => void,
): void {
  let row = initial;
  for (const col of columns) {
    if (!col.set) continue;
    const answer = window.prompt(`${col.label}?`, col.get(row));
    if (answer === null) return;
    row = col.set(row, answer);
  }
  try {
    commit(row);
    render();
  } catch (error) {
    const slot = document.querySelector("#row-error");
    if (slot) slot.textContent = (error as Error).message;
    else window.alert((error as Error).message);
  }
}

function renderImages(body: HTMLElement, entry: WebsiteEntry): void {
  const filter = tabFilters.get(activeTab) ?? "";
  const searchable = entry.images.map((img, i) => ({
    _i: String(i), Name: img.name, Notes: img.notes, URL: img.relatedUrl ?? "",
  }));
  const visible = filterRows(searchable, filter);
  body.innerHTML = `
    <input id="tab-filter" placeholder="filter rows" value="${esc(filter)}" autocomplete="off">
    <table>
      <tr><th>Thumbnail</th><th>Name</th><th>Notes</th><th>Related URL</th><th>Size</th><th></th></tr>
      ${visible.map((cells) => {
        const img = entry.images[Number(cells._i)];
        const uri = `data:${img.thumbnail.mediaType};base64,`;
        return `
        <tr>
          <td><img class="thumb" data-i="${cells._i}" width="${img.thumbWidth}" height="${img.thumbHeight}" alt="${esc(img.name)}"></td>
          <td>${esc(img.name)}</td><td>${esc(img.notes)}</td><td>${esc(cells.URL)}</td>
          <td>${img.fullWidth}x${img.fullHeight}</td>
          <td><button class="del" data-i="${cells._i}">Delete Row</button></td>
        </tr>`;
      }).join("")}
    </table>
    <button id="btn-editor">Open Image Editor</button>
    <p><small>Thumbnails are stored in the file; tables never rescale full images.</small></p>`;

  // Pre-stored thumbnails only: src assigned from the embedded payload.
  for (const img of body.querySelectorAll<HTMLImageElement>("img.thumb")) {
    const record = entry.images[Number(img.dataset.i)];
    img.src = thumbnailUri(record.thumbnail.mediaType, record.thumbnail.payload);
  }
  const filterBox = body.querySelector<HTMLInputElement>("#tab-filter")!;
  filterBox.addEventListener("input", () => {
    tabFilters.set(activeTab, filterBox.value);
    render();
  });
  for (const button of body.querySelectorAll<HTMLButtonElement>("button.del")) {
    button.addEventListener("click", () => {
      session.deleteRow("images", Number(button.dataset.i));
      render();
    });
  }
  body.querySelector("#btn-editor")!.addEventListener("click", () => {
    window.open("editor.html", "sln-image-editor", "width=900,height=700");
  });
}

function thumbnailUri(mediaType: string, payload: Uint8Array): string {
  let binary = "";
  for (const byte of payload) binary += String.fromCharCode(byte);
  return `data:${mediaType};base64,${btoa(binary)}`;
}

// The editor window hands records over through local storage; poll it.
pollHandoffs(
  window.localStorage,
  (image) => {
    if (!session.active) return;
    try {
      session.applyEditorImage(image);
      if (activeTab === "Images") render();
    } catch (error) {
      window.alert(`editor image rejected: ${(error as Error).message}`);
    }
  },
  () => { /* editor closed without commit: channel already cleared */ },
);

render();
