import init, { family_scan, jump, box_sim } from "./pkg/subsetlab_web.js";

const $ = (id) => document.getElementById(id);

function show(id, value) {
  const el = $(id);
  el.classList.toggle("err", Boolean(value && value.error));
  el.textContent = JSON.stringify(value, null, 1);
}

function axes(ctx, w, h, pad) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#666";
  ctx.fillText("0", pad - 12, h - pad + 4);
  ctx.fillText("1", pad - 12, pad + 4);
  ctx.fillText("1", w - pad - 3, h - pad + 14);
}

function plotPoints(canvas, points, highlight) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 24;
  axes(ctx, w, h, pad);
  const x = (q) => pad + q * (w - 2 * pad);
  const y = (p) => h - pad - p * (h - 2 * pad);
  for (const [q, p] of points) {
    ctx.fillStyle = "#2463b4";
    ctx.fillRect(x(q) - 2, y(p) - 2, 4, 4);
  }
  if (highlight) {
    const [q, p] = highlight;
    ctx.strokeStyle = "#c0392b";
    ctx.beginPath();
    ctx.arc(x(q), y(p), 5, 0, 2 * Math.PI);
    ctx.stroke();
  }
}

function runScan() {
  const res = JSON.parse(family_scan($("scan-family").value, Number($("scan-den").value)));
  if (res.error) return show("scan-out", res);
  plotPoints($("scan-plot"), res.map((r) => [r.qf, r.pi1f]));
  show("scan-out", res.map(({ q, pi0, pi1, pi2 }) => `${q}: ${pi0} ${pi1} ${pi2}`));
}

function runJump() {
  const res = JSON.parse(jump(
    $("jump-family").value,
    $("jump-q0").value,
    Number($("jump-depth").value),
    $("jump-above").checked,
  ));
  if (res.error) return show("jump-out", res);
  const [a, b] = res.point.split("/").map(Number);
  const [va, vb] = res.value_at_point.split("/").map(Number);
  plotPoints($("jump-plot"), res.samplesf, [a / b, va / vb]);
  const { samples, samplesf, ...summary } = res;
  show("jump-out", summary);
}

function runSim() {
  const res = JSON.parse(box_sim(
    Number($("sim-a1").value),
    Number($("sim-a2").value),
    Number($("sim-b").value),
    Number($("sim-trials").value),
    Number($("sim-seed").value),
  ));
  if (res.error) return show("sim-out", res);
  const canvas = $("sim-plot");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const slot = w / res.places.length;
  res.places.forEach((p, i) => {
    const x0 = i * slot + slot * 0.2;
    ctx.fillStyle = "#9bb7dd";
    ctx.fillRect(x0, h - 20 - p.exactf * (h - 40), slot * 0.28, p.exactf * (h - 40));
    ctx.fillStyle = "#2463b4";
    ctx.fillRect(x0 + slot * 0.3, h - 20 - p.estimate * (h - 40), slot * 0.28, p.estimate * (h - 40));
    ctx.fillStyle = "#333";
    ctx.fillText(`place ${p.place}`, x0, h - 6);
  });
  show("sim-out", res);
}

await init();
$("scan-run").onclick = runScan;
$("jump-run").onclick = runJump;
$("sim-run").onclick = runSim;
runScan();
runJump();
runSim();
