import init, { partitionCircuit, memoTable, generateQft } from "./pkg/qcpart_web.js";

const PALETTE = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f"];
const SVG_NS = "http://www.w3.org/2000/svg";

const $ = (id) => document.getElementById(id);

function svgEl(name, attrs, text) {
  const el = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

function widthOf(source) {
  const m = source.match(/^\s*qubits\s+(\d+)/m);
  return m ? Number(m[1]) : 1;
}

function drawCircuit(view) {
  const svg = $("circuit");
  svg.replaceChildren();
  const rowH = 32, colW = 38, left = 60, top = 24;
  const width = left + colW * (view.gates.length + 1);
  const height = top + rowH * view.width;
  svg.setAttribute("width", Math.max(width, 300));
  svg.setAttribute("height", height);
  const y = (q) => top + q * rowH;

  for (let q = 0; q < view.width; q++) {
    const color = PALETTE[view.part_of[q] % PALETTE.length];
    svg.append(svgEl("text", { x: 4, y: y(q) + 4, fill: color, "font-size": 13 }, `q${q + 1} p${view.part_of[q]}`));
    svg.append(svgEl("line", { x1: left, y1: y(q), x2: width, y2: y(q), stroke: color, "stroke-width": 3 }));
  }
  view.gates.forEach((gate, i) => {
    const x = left + colW * (i + 0.75);
    const global = view.trace[i].kind === "GLOBAL";
    const ink = global ? "#d62728" : "#333";
    if (gate.qubits.length === 2) {
      const [c, t] = gate.qubits;
      svg.append(svgEl("line", { x1: x, y1: y(c), x2: x, y2: y(t), stroke: ink, "stroke-width": global ? 2.5 : 1.5,
        "stroke-dasharray": global ? "4 3" : "" }));
      svg.append(svgEl("circle", { cx: x, cy: y(c), r: 4, fill: ink }));
      svg.append(svgEl("circle", { cx: x, cy: y(t), r: 8, fill: "white", stroke: ink, "stroke-width": 1.5 }));
    } else {
      const q = gate.qubits[0];
      svg.append(svgEl("rect", { x: x - 9, y: y(q) - 9, width: 18, height: 18, fill: "white", stroke: ink }));
      svg.append(svgEl("text", { x, y: y(q) + 4, "text-anchor": "middle", "font-size": 10 }, gate.label.slice(0, 2).toUpperCase()));
    }
    svg.append(svgEl("text", { x, y: 12, "text-anchor": "middle", "font-size": 10, fill: "#666" }, `g${i + 1}`));
  });
}

function drawTrace(view) {
  const rows = view.trace.map((e) =>
    `<tr><td>g${e.gate_ordinal + 1}</td><td>${e.rendering}</td>` +
    `<td class="${e.kind === "GLOBAL" ? "G" : ""}">${e.kind === "GLOBAL" ? "G" : "L"}</td><td>${e.teleports_so_far}</td></tr>`);
  $("trace").innerHTML = "<tr><th>#</th><th>gate</th><th>type</th><th>teleports</th></tr>" + rows.join("");
}

function drawTable(table) {
  if (!table) {
    $("table").innerHTML = "";
    return;
  }
  const max = Math.max(1, ...table.rows.flatMap((r) => r.costs.filter((c) => c !== null)));
  let html = "<tr><th>index</th><th>set</th>";
  for (let k = 1; k <= table.k_max; k++) html += `<th>k=${k}</th>`;
  html += "</tr>";
  for (const row of table.rows) {
    html += `<tr><td>${row.index}</td><td>${row.set}</td>`;
    for (const c of row.costs) {
      if (c === null) {
        html += `<td class="na">N.A</td>`;
      } else {
        const shade = Math.round(255 - 120 * (c / max));
        html += `<td style="background:rgb(255,${shade},${shade})">${c}</td>`;
      }
    }
    html += "</tr>";
  }
  $("table").innerHTML = html;
}

function update() {
  const source = $("source").value;
  const n = widthOf(source);
  const slider = $("parts");
  slider.max = Math.max(1, n);
  if (Number(slider.value) > n) slider.value = n;
  const k = Number(slider.value);
  $("partsOut").textContent = k;
  $("error").textContent = "";
  try {
    const view = JSON.parse(partitionCircuit(source, k, Number($("cap").value) || 0));
    $("summary").innerHTML =
      `<b>${view.cost}</b> teleportation(s), R = ${view.ratio_r}, parts: ` +
      view.parts.map((p, i) => `<span style="color:${PALETTE[i % PALETTE.length]}">p${i}={${p.map((q) => "q" + q).join(",")}}</span>`).join(" ");
    drawCircuit(view);
    drawTrace(view);
  } catch (err) {
    $("error").textContent = String(err.message ?? err);
    $("summary").textContent = "";
    return;
  }
  if ($("showTable").checked) {
    try {
      drawTable(JSON.parse(memoTable(source, k)));
    } catch (err) {
      drawTable(null);
      $("error").textContent = String(err.message ?? err);
    }
  } else {
    drawTable(null);
  }
}

await init();
for (const id of ["source", "parts", "cap", "showTable"]) $(id).addEventListener("input", update);
$("qftGo").addEventListener("click", () => {
  try {
    $("source").value = generateQft(Number($("qftN").value));
    update();
  } catch (err) {
    $("error").textContent = String(err.message ?? err);
  }
});
update();
