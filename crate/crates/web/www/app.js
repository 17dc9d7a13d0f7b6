// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { posterior_table, cpa_game, muddy_run } from "./pkg/cryptologic_web.js";

const $ = (id) => document.getElementById(id);

function table(head, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.appendChild(th);
  }
  for (const r of rows) {
    const row = t.insertRow();
    for (const cell of r) row.insertCell().textContent = String(cell);
  }
  return t;
}

function show(out, json, render) {
  out.replaceChildren();
  const v = JSON.parse(json);
  if (v.error) {
    const p = document.createElement("p");
    p.className = "error";
    p.textContent = v.error;
    out.appendChild(p);
    return;
  }
  for (const node of render(v)) out.appendChild(node);
}

function text(s) {
  const p = document.createElement("p");
  p.textContent = s;
  return p;
}

function runTable() {
  const json = posterior_table(+$("pt-ell").value, +$("pt-blocks").value, $("pt-plus").checked, $("pt-weights").value);
  show($("pt-out"), json, (v) => {
    const verdict = v.it_sec
      ? "perfectly secret: every row equals the prior"
      : `not perfectly secret: at ${v.witness.state} the posterior is ${v.witness.posterior} against prior ${v.witness.prior}`;
    const rows = [["prior", "", ...v.priors], ...v.rows.map((r) => [r.c, r.mass, ...r.posteriors])];
    return [text(verdict), table(["c", "Pr(c)", ...v.messages], rows)];
  });
}

function runGame() {
  const json = cpa_game(+$("cpa-ell").value, $("cpa-plus").checked, $("cpa-bias").value);
  show($("cpa-out"), json, (v) => [
    text(`success ${v.success}, blind ${v.blind_success}, advantage ${v.advantage}: ${v.broken ? "broken" : "no better than guessing"}`),
    table(["c", "Pr(c)", "Pr(b=1 | view)"], v.observations.map((o) => [o.c, o.mass, o.posterior])),
  ]);
}

function runMuddy() {
  const json = muddy_run($("mc-m").value, $("mc-noise").value, $("mc-threshold").value, $("mc-father").checked, +$("mc-rounds").value);
  show($("mc-out"), json, (v) => {
    const n = v.assignment.length;
    const head = ["round"];
    for (let i = 1; i <= n; i++) head.push(`child ${i}`);
    const rows = v.rounds.map((r) => [
      r.round,
      ...r.posteriors.map((p, i) => `${p} ${r.claimed[i] ? "knows" : "?"}${r.heard[i] !== r.claimed[i] ? " (flipped)" : ""}`),
    ]);
    return [table(head, rows), text(`stopped: ${v.termination.reason} at round ${v.termination.round}`)];
  });
}

await init();
$("pt-run").onclick = runTable;
$("cpa-run").onclick = runGame;
$("mc-run").onclick = runMuddy;
runTable();
runGame();
runMuddy();
