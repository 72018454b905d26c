import init, { jost_landscape, scan_poles, depth_sweep } from "./pkg/jost_web.js";

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");
const STEP = 4;

function num(id) {
  return parseFloat($(id).value);
}

function view() {
  return {
    depth: num("depth"),
    radius: num("radius"),
    l: parseInt($("l").value, 10),
    re: [num("re-min"), num("re-max")],
    im: [num("im-min"), num("im-max")],
  };
}

function toPixel(v, re, im) {
  const x = ((re - v.re[0]) / (v.re[1] - v.re[0])) * canvas.width;
  const y = ((v.im[1] - im) / (v.im[1] - v.im[0])) * canvas.height;
  return [x, y];
}

function report(err) {
  $("status").textContent = err ? String(err) : "";
}

function axes(v) {
  ctx.strokeStyle = "rgba(255,255,255,0.6)";
  ctx.lineWidth = 1;
  const [x0, y0] = toPixel(v, 0, 0);
  ctx.beginPath();
  ctx.moveTo(0, y0);
  ctx.lineTo(canvas.width, y0);
  ctx.moveTo(x0, 0);
  ctx.lineTo(x0, canvas.height);
  ctx.stroke();
}

function drawLandscape() {
  const v = view();
  const nx = Math.floor(canvas.width / STEP);
  const ny = Math.floor(canvas.height / STEP);
  let data;
  try {
    data = jost_landscape(v.depth, v.radius, v.l, v.re[0], v.re[1], v.im[0], v.im[1], nx, ny);
  } catch (e) {
    report(e);
    return;
  }
  report();
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      const idx = 2 * (j * nx + i);
      const logAbs = data[idx];
      const arg = data[idx + 1];
      if (Number.isNaN(logAbs)) {
        ctx.fillStyle = "#000";
      } else {
        const hue = ((arg / Math.PI) * 180 + 360) % 360;
        const light = 50 + 20 * Math.tanh(logAbs);
        ctx.fillStyle = `hsl(${hue.toFixed(0)},80%,${light.toFixed(0)}%)`;
      }
      ctx.fillRect(i * STEP, canvas.height - (j + 1) * STEP, STEP, STEP);
    }
  }
  axes(v);
}

function marker(v, p, colour) {
  const [x, y] = toPixel(v, p.re, p.im);
  ctx.strokeStyle = colour;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(x, y, 6, 0, 2 * Math.PI);
  ctx.stroke();
}

const fmt = (x) => (x === null || x === undefined ? "" : x.toPrecision(10));

function table(poles) {
  const rows = poles.map(
    (p) =>
      `<tr><td>${fmt(p.re)}</td><td>${fmt(p.im)}</td><td>${p.class ?? "?"}</td>` +
      `<td>${fmt(p.n_re)}</td><td>${fmt(p.n_im)}</td><td>${p.flags.join(" ")}</td></tr>`,
  );
  $("poles").innerHTML =
    "<tr><th>Re k0</th><th>Im k0</th><th>class</th><th>Re N</th><th>Im N</th><th>flags</th></tr>" +
    rows.join("");
}

function findPoles() {
  const v = view();
  drawLandscape();
  let poles;
  try {
    poles = JSON.parse(scan_poles(v.depth, v.radius, v.l, v.re[0], v.re[1], v.im[0], v.im[1]));
  } catch (e) {
    report(e);
    return;
  }
  poles.forEach((p) => marker(v, p, "#fff"));
  table(poles);
}

function sweepDepth() {
  const v = view();
  drawLandscape();
  let tracks;
  try {
    const json = depth_sweep(
      v.radius,
      v.l,
      num("sweep-from"),
      num("sweep-to"),
      parseInt($("sweep-steps").value, 10),
      v.re[0],
      v.re[1],
      v.im[0],
      v.im[1],
    );
    tracks = JSON.parse(json);
  } catch (e) {
    report(e);
    return;
  }
  ctx.lineWidth = 2;
  ctx.strokeStyle = "#fff";
  for (const t of tracks) {
    ctx.beginPath();
    t.points.forEach(([, p], i) => {
      const [x, y] = toPixel(v, p.re, p.im);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
    if (t.points.length) marker(v, t.points[t.points.length - 1][1], t.lost ? "#f44" : "#fff");
  }
  table(tracks.flatMap((t) => (t.points.length ? [t.points[t.points.length - 1][1]] : [])));
}

canvas.addEventListener("mousemove", (ev) => {
  const v = view();
  const r = canvas.getBoundingClientRect();
  const re = v.re[0] + ((ev.clientX - r.left) / canvas.width) * (v.re[1] - v.re[0]);
  const im = v.im[1] - ((ev.clientY - r.top) / canvas.height) * (v.im[1] - v.im[0]);
  $("cursor").textContent = `k = ${re.toFixed(4)} ${im < 0 ? "-" : "+"} ${Math.abs(im).toFixed(4)}i`;
});

await init();
$("draw").addEventListener("click", drawLandscape);
$("scan").addEventListener("click", findPoles);
$("sweep").addEventListener("click", sweepDepth);
findPoles();
