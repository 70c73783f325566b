/* Minimal offline renderer: draws the bubble diagram and keyphrase table
 * from the embedded JSON document. Replaced by the full interactive
 * viewer bundle when that is built and vendored in. */
(function () {
  "use strict";
  var dataNode = document.getElementById("scholiview-data");
  var svg = document.getElementById("scholiview-canvas");
  if (!dataNode || !svg) return;
  var doc;
  try {
    doc = JSON.parse(dataNode.textContent);
  } catch (err) {
    showError("could not parse embedded summary data");
    return;
  }
  if (!doc || doc.schema !== "scholiview/1") {
    showError("unsupported summary schema");
    return;
  }

  var NS = "http://www.w3.org/2000/svg";
  var W = 800, H = 600, PAD = 60;
  var span = Math.min(W, H) - 2 * PAD;
  var maxRadius = 0;
  doc.bubbles.forEach(function (b) { maxRadius = Math.max(maxRadius, b.radius); });
  // One uniform scale keeps circle area ratios identical to the data.
  var rScale = maxRadius > 0 ? (span / 5) / maxRadius : 1;

  doc.bubbles.forEach(function (b) {
    var cx = PAD + b.x * span + (W - Math.min(W, H)) / 2;
    var cy = H - PAD - b.y * span;
    var g = document.createElementNS(NS, "g");
    var c = document.createElementNS(NS, "circle");
    c.setAttribute("cx", cx);
    c.setAttribute("cy", cy);
    c.setAttribute("r", b.radius * rScale);
    c.setAttribute("fill", "steelblue");
    c.setAttribute("fill-opacity", "0.45");
    c.setAttribute("stroke", "#456");
    var tip = document.createElementNS(NS, "title");
    tip.textContent = b.label + " (" + b.frequency + ")";
    c.appendChild(tip);
    var label = document.createElementNS(NS, "text");
    label.setAttribute("x", cx);
    label.setAttribute("y", cy);
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("font-size", "12");
    label.textContent = b.label;
    g.appendChild(c);
    g.appendChild(label);
    svg.appendChild(g);
  });

  function showError(message) {
    var section = document.getElementById("scholiview-table") || document.body;
    var p = document.createElement("p");
    p.id = "scholiview-error";
    p.textContent = message;
    section.insertBefore(p, section.firstChild);
  }
})();
