// Build the package first: wasm-pack build --target web crates/demo
import init, { annulus_pgf, mean_vs_tau, exponent_table } from "../pkg/webtrace_demo.js";

function fillTable(table, header, rows) {
  table.innerHTML = "";
  const head = table.insertRow();
  for (const h of header) {
    const th = document.createElement("th");
    th.textContent = h;
    head.appendChild(th);
  }
  for (const r of rows) {
    const tr = table.insertRow();
    for (const c of r) tr.insertCell().textContent = c;
  }
}

function showPgf() {
  const m = Number(document.getElementById("m").value);
  const h = Number(document.getElementById("height").value);
  const meanEl = document.getElementById("mean");
  try {
    const data = JSON.parse(annulus_pgf(m, h));
    meanEl.className = "";
    meanEl.textContent = `mean loops of one orientation: ${data.mean} = ${data.mean_value.toFixed(6)}`;
    fillTable(document.getElementById("pgf"), ["j", "k", "probability", "decimal"],
      data.rows.map(r => [r.j, r.k, r.exact, r.value.toFixed(6)]));
  } catch (e) {
    meanEl.className = "err";
    meanEl.textContent = String(e);
    document.getElementById("pgf").innerHTML = "";
  }
}

function drawCurve() {
  const pts = JSON.parse(mean_vs_tau(0.1, 2.0, 200));
  const canvas = document.getElementById("curve");
  const ctx = canvas.getContext("2d");
  const pad = 30;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  const xmax = pts[pts.length - 1][0];
  const ymax = Math.max(...pts.map(p => p[1]));
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillText("τ", pad + w / 2, canvas.height - 8);
  ctx.fillText(ymax.toFixed(2), 2, pad + 4);
  ctx.fillText(xmax.toFixed(1), pad + w - 10, pad + h + 14);
  ctx.strokeStyle = "#1a5fb4";
  ctx.beginPath();
  pts.forEach(([x, y], i) => {
    const px = pad + (x / xmax) * w;
    const py = pad + h - (y / ymax) * h;
    if (i === 0) ctx.moveTo(px, py); else ctx.lineTo(px, py);
  });
  ctx.stroke();
}

function showExponents() {
  const rows = JSON.parse(exponent_table(6));
  fillTable(document.getElementById("exp"), ["j", "k", "exponent", "exhaustive check"],
    rows.map(r => [r.j, r.k, r.exponent, r.oracle === null ? "" : r.oracle]));
}

await init();
document.getElementById("go").addEventListener("click", showPgf);
showPgf();
drawCurve();
showExponents();
