import init, { clifford_sweep, tau_grid, analyze } from "./pkg/curvlab_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function drawSweep() {
  const res = JSON.parse(clifford_sweep(num("cp"), num("cn"), num("cc"), 120));
  const cv = $("sweep"), ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  if (res.error) { $("sweep-msg").textContent = res.error; return; }
  const pts = res.points;
  // clip to the central quantiles: κ blows up at both ends of the family
  const ks = pts.map((p) => p.kappa).sort((a, b) => a - b);
  const lo = ks[Math.floor(ks.length * 0.1)], hi = ks[Math.floor(ks.length * 0.9)];
  const x = (t) => (t / (Math.PI / 2)) * cv.width;
  const y = (k) => cv.height - ((Math.min(Math.max(k, lo), hi) - lo) / (hi - lo || 1)) * (cv.height - 20) - 10;
  ctx.strokeStyle = "#333";
  ctx.beginPath();
  pts.forEach((p, i) => (i ? ctx.lineTo(x(p.t), y(p.kappa)) : ctx.moveTo(x(p.t), y(p.kappa))));
  ctx.stroke();
  for (const p of pts) {
    if (p.roter) { ctx.fillStyle = "#2a6fdb"; ctx.fillRect(x(p.t) - 1, cv.height - 6, 2, 6); }
  }
  ctx.strokeStyle = "#e08a00";
  ctx.beginPath(); ctx.moveTo(x(res.threshold), 0); ctx.lineTo(x(res.threshold), cv.height); ctx.stroke();
  const roter = pts.filter((p) => p.roter).length;
  $("sweep-msg").textContent =
    `Einstein threshold t = ${res.threshold.toFixed(6)}; ${roter} of ${pts.length} samples are Roter; κ shown in [${lo.toFixed(3)}, ${hi.toFixed(3)}]`;
}

function drawTau() {
  const size = 160;
  const res = JSON.parse(tau_grid(num("tn1"), num("tn2"), num("tl0"), num("tc"), num("te"), size));
  const cv = $("tau"), ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  if (res.error) { $("tau-msg").textContent = res.error; return; }
  const vals = res.rows.flat().filter((v) => v !== null).map(Math.abs).sort((a, b) => a - b);
  const scale = vals[Math.floor(vals.length * 0.9)] || 1;
  const cell = cv.width / size;
  res.rows.forEach((row, i) =>
    row.forEach((v, j) => {
      if (v === null) { ctx.fillStyle = "#000"; }
      else {
        const s = Math.min(Math.abs(v) / scale, 1) ** 0.35;
        const pale = Math.round(255 * (1 - s));
        ctx.fillStyle = v > 0 ? `rgb(255,${pale},${pale})` : `rgb(${pale},${pale},255)`;
      }
      ctx.fillRect(j * cell, i * cell, cell + 0.5, cell + 0.5);
    }));
  $("tau-msg").textContent = `λ₁ left→right, λ₂ bottom→top, both in [−${res.extent}, ${res.extent}]; black where curvatures coincide.`;
}

function classify() {
  const res = JSON.parse(analyze($("spec").value));
  $("out").textContent = JSON.stringify(res, null, 2);
}

await init();
for (const id of ["cp", "cn", "cc"]) $(id).addEventListener("change", drawSweep);
for (const id of ["tn1", "tn2", "tl0", "tc", "te"]) $(id).addEventListener("change", drawTau);
$("go").addEventListener("click", classify);
drawSweep();
drawTau();
classify();
