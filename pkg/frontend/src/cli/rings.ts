/** Renders slot-ring occupancy diagrams from a convergence rounds.csv. */
import { join } from "node:path";
import { statSync } from "node:fs";

import { buildRingFigure } from "../figures.js";
import { runFigureScript } from "./common.js";

runFigureScript("rings", process.argv.slice(2), (input) => {
  // accept either the rounds.csv itself or its containing cell directory
  const path = statSync(input).isDirectory() ? join(input, "rounds.csv") : input;
  return buildRingFigure(path);
});
