import init, { extract_table, deviation_grid, chi } from "./pkg/numap_wasm.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  out.classList.remove("error");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e.message ?? e);
  }
}

function multiset(x) {
  const parts = [];
  x.forEach((m, i) => { for (let j = 0; j < m; j++) parts.push(i + 1); });
  return "{" + parts.join(",") + "}";
}

function monomial(x) {
  return x.map((m, i) => (m === 0 ? "" : m === 1 ? `t${i + 1}` : `t${i + 1}^${m}`)).join("") || "1";
}

function runExtract() {
  show($("ex-out"), () => {
    const r = JSON.parse(extract_table($("ex-spec").value, Number($("ex-n").value)));
    const lines = ["binomial basis, v_X:"];
    for (const { X, v } of r.table.coeffs) lines.push(`  ${multiset(X).padEnd(12)} ${v.join(", ")}`);
    lines.push("", `monomial basis over Q (${r.integral ? "integral" : "not integral"}):`);
    for (const { X, v } of r.monomial.coeffs) lines.push(`  ${monomial(X).padEnd(12)} ${v.join(", ")}`);
    return lines.join("\n");
  });
}

function colour(v, max) {
  if (v === 0 || max === 0) return "#fff";
  const a = Math.min(1, Math.log1p(Math.abs(v)) / Math.log1p(max));
  return v > 0 ? `rgba(200,60,40,${a})` : `rgba(40,90,200,${a})`;
}

function runGrid() {
  const target = $("dg-out");
  const summary = $("dg-summary");
  summary.classList.remove("error");
  target.replaceChildren();
  let r;
  try {
    r = JSON.parse(deviation_grid($("dg-spec").value, Number($("dg-order").value),
      BigInt($("dg-lo").value), BigInt($("dg-hi").value)));
  } catch (e) {
    summary.classList.add("error");
    summary.textContent = String(e.message ?? e);
    return;
  }
  const nums = r.rows.flat().map(Number);
  const max = Math.max(...nums.map(Math.abs));
  summary.textContent = `${r.nonzero} nonzero of ${nums.length} values, ${r.order} arguments`;
  const table = document.createElement("table");
  table.className = "grid";
  const head = table.insertRow();
  head.appendChild(document.createElement("th")).textContent = "y\\x";
  for (const x of r.axis) head.appendChild(document.createElement("th")).textContent = x;
  r.rows.forEach((row, i) => {
    const tr = table.insertRow();
    tr.appendChild(document.createElement("th")).textContent = r.axis[i];
    for (const v of row) {
      const td = tr.insertCell();
      td.textContent = v;
      td.style.background = colour(Number(v), max);
    }
  });
  target.appendChild(table);
}

function runChi() {
  show($("chi-out"), () => {
    const p = JSON.parse(chi($("chi-x").value, Number($("chi-n").value)));
    if (p.coeffs.length === 0) return "0";
    return p.coeffs.map(({ X, c }) => `${c} ${monomial(X)}`).join("\n");
  });
}

await init();
$("ex-run").onclick = runExtract;
$("dg-run").onclick = runGrid;
$("chi-run").onclick = runChi;
runExtract();
runGrid();
runChi();
