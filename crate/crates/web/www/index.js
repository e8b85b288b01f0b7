import init, { recurrenceTable, verifySuite, weightCurve } from "./pkg/qladder_web.js";

const $ = (id) => document.getElementById(id);

function params() {
  return {
    family: $("family").value,
    sqrtq: $("sqrtq").value.trim(),
    alpha: parseInt($("alpha").value, 10) || 0,
    nmax: parseInt($("nmax").value, 10) || 0,
  };
}

function guarded(fn) {
  return () => {
    $("error").textContent = "";
    try {
      fn();
    } catch (e) {
      $("error").textContent = e.message ?? String(e);
    }
  };
}

function showTable() {
  const p = params();
  const doc = JSON.parse(recurrenceTable(p.family, p.sqrtq, p.alpha, p.nmax));
  const cols = ["n", "alpha", "beta", "big_r", "small_r", "p1", "zeta_ratio"];
  const head = ["n", "alpha_n", "beta_n", "R_n", "r_n", "p1(n)", "zeta_n/zeta_0"];
  const table = document.createElement("table");
  table.insertRow().append(...head.map((h) => Object.assign(document.createElement("th"), { textContent: h })));
  for (const row of doc.rows) {
    const tr = table.insertRow();
    for (const c of cols) tr.insertCell().textContent = row[c];
  }
  $("table").replaceChildren(table);
}

function showSuite() {
  const p = params();
  const doc = JSON.parse(verifySuite(p.family, p.sqrtq, p.alpha, p.nmax));
  const s = doc.summary;
  $("summary").textContent =
    `${doc.success ? "all outcomes as expected" : "UNEXPECTED OUTCOMES"}: ` +
    `${s.passed} passed, ${s.failed} failed, ${s.expected_failures} failed as expected`;
  const lines = doc.entries.map((e) => {
    const span = document.createElement("span");
    span.textContent = `${e.label}: ${e.outcome}${e.detail ? ` [${e.detail}]` : ""}\n`;
    if (e.outcome === "FAIL" || e.outcome === "UNEXPECTED PASS") span.className = "bad";
    if (e.outcome === "failed as expected") span.className = "expected";
    return span;
  });
  $("report").replaceChildren(...lines);
}

function drawCurves() {
  const p = params();
  const n = parseInt($("degree").value, 10);
  $("degree-label").textContent = n;
  const points = 400;
  const tMin = -8;
  const tMax = 14;
  const s = weightCurve(p.family, p.sqrtq, p.alpha, n, tMin, tMax, points);
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const xOf = (t) => ((t - tMin) / (tMax - tMin)) * width;
  const curve = (offset, color) => {
    let max = 0;
    for (let i = 0; i < points; i++) max = Math.max(max, s[offset + i]);
    if (!(max > 0)) return;
    ctx.strokeStyle = color;
    ctx.beginPath();
    for (let i = 0; i < points; i++) {
      const y = height - 10 - (s[offset + i] / max) * (height - 20);
      if (i === 0) ctx.moveTo(xOf(s[i]), y);
      else ctx.lineTo(xOf(s[i]), y);
    }
    ctx.stroke();
  };
  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(xOf(0), 0);
  ctx.lineTo(xOf(0), height);
  ctx.stroke();
  curve(points, "#1f5fbf");
  curve(2 * points, "#c0392b");
  ctx.fillStyle = "#333";
  ctx.fillText(`ln x from ${tMin} to ${tMax}; blue: x w(x), red: x w(x) P_${n}(x)^2 (each scaled to its maximum)`, 8, 14);
}

await init();
$("table-btn").onclick = guarded(showTable);
$("verify-btn").onclick = guarded(showSuite);
$("degree").oninput = guarded(drawCurves);
for (const id of ["family", "sqrtq", "alpha"]) $(id).onchange = guarded(drawCurves);
guarded(drawCurves)();
