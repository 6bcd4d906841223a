import init, { solids, neighbors, peel_solid, classify_solid } from "./pkg/peelkit_web.js";

const $ = (id) => document.getElementById(id);

function option(value, text) {
  const o = document.createElement("option");
  o.value = value;
  o.textContent = text;
  return o;
}

function setStatus(text, isError = false) {
  $("status").textContent = text;
  $("status").className = isError ? "error" : "";
}

let catalog = [];

function current() {
  return catalog[Number($("solid").value)];
}

function fillFirstFaces() {
  const s = current();
  $("f1").replaceChildren(...s.faces.map((gon, f) => option(f, `${f} (${gon}-gon)`)));
  fillSecondFaces();
}

function fillSecondFaces() {
  const s = current();
  const f1 = Number($("f1").value);
  const nb = Array.from(neighbors(s.name, f1));
  $("f2").replaceChildren(...nb.map((f) => option(f, `${f} (${s.faces[f]}-gon)`)));
}

function runPeel() {
  const s = current();
  try {
    const view = JSON.parse(
      peel_solid(s.name, Number($("f1").value), Number($("f2").value), $("hand").value),
    );
    $("net").innerHTML = view.net_svg;
    $("graph").innerHTML = view.graph_svg;
    $("report").textContent = JSON.stringify(view.report, null, 1);
    const r = view.report;
    setStatus(`${r.outcome}: ${r.order.length} of ${s.faces.length} faces`);
  } catch (e) {
    setStatus(String(e), true);
  }
}

function runClassify() {
  const s = current();
  setStatus("classifying...");
  // let the status repaint before the synchronous call
  setTimeout(() => {
    try {
      const v = JSON.parse(classify_solid(s.name, $("hand").value));
      setStatus(
        `${v.solid}: ${v.verdict}, ${v.complete} of ${v.total} start pairs complete, ` +
          `${v.classes} pattern classes`,
      );
    } catch (e) {
      setStatus(String(e), true);
    }
  }, 0);
}

await init();
catalog = JSON.parse(solids());
$("solid").replaceChildren(
  ...catalog.map((s, i) => option(i, `${s.name} ${s.index} (${s.family})`)),
);
$("solid").addEventListener("change", fillFirstFaces);
$("f1").addEventListener("change", fillSecondFaces);
$("peel").addEventListener("click", runPeel);
$("classify").addEventListener("click", runClassify);
fillFirstFaces();
runPeel();
