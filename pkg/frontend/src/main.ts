import { AnnotateView } from "./annotate";
import { InspectView, INSPECTABLE_METHODS } from "./inspect";
import { listPairs } from "./api";
import "./style.css";

const app = document.querySelector<HTMLElement>("#app")!;

app.innerHTML = `
  <header>
    <h1>source sentence annotation</h1>
    <nav>
      <button id="tab-annotate" class="active">Annotate</button>
      <button id="tab-inspect">Inspect scores</button>
    </nav>
  </header>
  <section id="annotate-setup">
    <label>Annotator id <input id="annotator-id" placeholder="your id"></label>
    <button id="start">Start</button>
  </section>
  <section id="inspect-setup" hidden>
    <label>Pair <select id="pair-select"></select></label>
    <span id="method-boxes"></span>
    <button id="inspect-load">Load</button>
  </section>
  <main id="view"></main>
`;

const view = document.querySelector<HTMLElement>("#view")!;
const annotateSetup = document.querySelector<HTMLElement>("#annotate-setup")!;
const inspectSetup = document.querySelector<HTMLElement>("#inspect-setup")!;
const annotate = new AnnotateView(view);
const inspect = new InspectView(view);

document.querySelector("#start")!.addEventListener("click", () => {
  const id = document.querySelector<HTMLInputElement>("#annotator-id")!.value.trim();
  if (id) void annotate.start(id);
});

const methodBoxes = document.querySelector<HTMLElement>("#method-boxes")!;
methodBoxes.innerHTML = INSPECTABLE_METHODS.map(
  (m) => `<label><input type="checkbox" value="${m}" ${m === "rouge" ? "checked" : ""}> ${m}</label>`,
).join(" ");

document.querySelector("#tab-annotate")!.addEventListener("click", () => {
  annotateSetup.hidden = false;
  inspectSetup.hidden = true;
  view.innerHTML = "";
});

document.querySelector("#tab-inspect")!.addEventListener("click", async () => {
  annotateSetup.hidden = true;
  inspectSetup.hidden = false;
  view.innerHTML = "";
  const select = document.querySelector<HTMLSelectElement>("#pair-select")!;
  if (select.options.length === 0) {
    const pairs = await listPairs();
    select.innerHTML = pairs.map((p) => `<option value="${p.pair_id}">${p.pair_id}</option>`).join("");
  }
});

document.querySelector("#inspect-load")!.addEventListener("click", () => {
  const select = document.querySelector<HTMLSelectElement>("#pair-select")!;
  const methods = Array.from(methodBoxes.querySelectorAll<HTMLInputElement>("input:checked")).map((b) => b.value);
  if (select.value && methods.length) void inspect.load(select.value, methods);
});
