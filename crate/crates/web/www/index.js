import init, { branch, exclusion_grid, hn_hull } from "./pkg/torelli_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number.parseInt($(id).value, 10) || 0;

function show(el, fn) {
  try {
    el.classList.remove("err");
    fn();
  } catch (e) {
    el.classList.add("err");
    el.textContent = e.message ?? String(e);
  }
}

function runBranch() {
  const kind = document.querySelector("input[name=rep]:checked").value;
  show($("br-out"), () => {
    $("br-out").textContent = branch(kind, num("br-a"), num("br-b"), $("br-part").value);
  });
}

function runGrid() {
  show($("gr-out"), () => {
    $("gr-out").innerHTML = exclusion_grid($("gr-kind").value, num("gr-d"), num("gr-n"), num("gr-m"), num("gr-copies"));
  });
}

function runHull() {
  show($("hn-out"), () => {
    const [text, svg] = hn_hull($("hn-in").value).split("\n\n");
    $("hn-out").innerHTML = "";
    const pre = document.createElement("pre");
    pre.textContent = text;
    $("hn-out").append(pre);
    $("hn-out").insertAdjacentHTML("beforeend", svg);
  });
}

await init();
$("br-go").addEventListener("click", runBranch);
$("gr-go").addEventListener("click", runGrid);
$("hn-go").addEventListener("click", runHull);
runBranch();
runGrid();
runHull();
