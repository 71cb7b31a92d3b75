import init, { spectrum_sweep, bound_profiles, emitter_population } from "./pkg/cra_web.js";

const OMEGA_C = 200;
const J = 1;
const COLORS = { lower: "#1f5fbf", upper: "#c0392b", band: "#eee", guide: "#999" };

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function frame(canvas, xr, yr) {
  const ctx = canvas.getContext("2d");
  const pad = 40;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const sx = (x) => pad + ((x - xr[0]) / (xr[1] - xr[0])) * w;
  const sy = (y) => pad + h - ((y - yr[0]) / (yr[1] - yr[0])) * h;
  ctx.strokeStyle = "#444";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(xr[0].toPrecision(3), pad, pad + h + 14);
  ctx.fillText(xr[1].toPrecision(3), pad + w - 24, pad + h + 14);
  ctx.fillText(yr[1].toPrecision(4), 2, pad + 4);
  ctx.fillText(yr[0].toPrecision(4), 2, pad + h);
  return { ctx, sx, sy };
}

function line(f, xs, ys, color, dashed = false) {
  const { ctx, sx, sy } = f;
  ctx.strokeStyle = color;
  ctx.setLineDash(dashed ? [4, 4] : []);
  ctx.beginPath();
  let open = false;
  xs.forEach((x, i) => {
    const y = ys[i];
    if (y === null || y === undefined) {
      open = false;
      return;
    }
    open ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y));
    open = true;
  });
  ctx.stroke();
  ctx.setLineDash([]);
}

function range(values, margin = 0.05) {
  const v = values.filter((x) => x !== null);
  const lo = Math.min(...v);
  const hi = Math.max(...v);
  const d = (hi - lo || 1) * margin;
  return [lo - d, hi + d];
}

function guarded(infoId, draw) {
  try {
    draw();
    $(infoId).classList.remove("err");
  } catch (e) {
    $(infoId).textContent = String(e.message ?? e);
    $(infoId).classList.add("err");
  }
}

function drawSpectrum() {
  guarded("spectrum-info", () => {
    const s = JSON.parse(spectrum_sweep(OMEGA_C, num("omega"), J, num("gmax"), 300));
    const yr = range([...s.lower, ...s.upper, s.band[0], s.band[1]]);
    const f = frame($("spectrum"), [0, s.g[s.g.length - 1]], yr);
    f.ctx.fillStyle = COLORS.band;
    f.ctx.fillRect(f.sx(0), f.sy(s.band[1]), f.sx(s.g[s.g.length - 1]) - f.sx(0), f.sy(s.band[0]) - f.sy(s.band[1]));
    line(f, s.g, s.lower, COLORS.lower);
    line(f, s.g, s.upper, COLORS.upper);
    if (s.g_star !== null) line(f, [s.g_star, s.g_star], [yr[0], yr[1]], COLORS.guide, true);
    $("spectrum-info").textContent =
      `band [${s.band[0]}, ${s.band[1]}]   ` +
      (s.g_star === null ? "two levels for every g > 0" : `second level appears above g* = ${s.g_star.toFixed(6)}`);
  });
}

function drawProfiles() {
  guarded("profile-info", () => {
    const levels = JSON.parse(bound_profiles(OMEGA_C, num("omega"), J, num("g0"), num("g1"), num("width")));
    if (levels.length === 0) {
      frame($("profile"), [0, 1], [0, 1]);
      $("profile-info").textContent = "no bound states";
      return;
    }
    const sites = levels[0].sites;
    const f = frame($("profile"), [sites[0] - 0.5, sites[sites.length - 1] + 0.5], range(levels.flatMap((l) => l.amplitudes)));
    line(f, [sites[0], sites[sites.length - 1]], [0, 0], COLORS.guide, true);
    levels.forEach((l, n) => {
      f.ctx.fillStyle = COLORS[l.branch];
      l.sites.forEach((j, i) => {
        const x = f.sx(j) + (n - 0.5) * 4;
        f.ctx.fillRect(x - 2, Math.min(f.sy(0), f.sy(l.amplitudes[i])), 4, Math.abs(f.sy(l.amplitudes[i]) - f.sy(0)));
      });
    });
    $("profile-info").textContent = levels
      .map((l) => `${l.branch.padEnd(5)} E = ${l.energy.toFixed(6)}  kappa = ${l.kappa.toFixed(4)}  S = ${l.chirality.toFixed(4)}  u_e = ${l.emitter_amplitude.toFixed(4)}`)
      .join("\n");
  });
}

function drawPopulation() {
  guarded("population-info", () => {
    const p = JSON.parse(emitter_population(OMEGA_C, num("omega"), J, num("g0"), num("g1"), num("tmax"), 600));
    const f = frame($("population"), [0, p.t[p.t.length - 1]], [0, 1]);
    line(f, p.t, p.p_e, COLORS.lower);
    line(f, [0, p.t[p.t.length - 1]], [p.mean, p.mean], COLORS.guide, true);
    $("population-info").textContent =
      `late-time mean ${p.mean.toFixed(5)}` +
      (p.frequency === null ? "" : `   oscillation ±${p.oscillation_amplitude.toFixed(5)} at frequency ${p.frequency.toFixed(5)}`);
  });
}

function redraw() {
  drawSpectrum();
  drawProfiles();
  drawPopulation();
}

await init();
document.querySelectorAll("input").forEach((el) => el.addEventListener("change", redraw));
redraw();
