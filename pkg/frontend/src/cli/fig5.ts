/** Renders the per-protocol information-error boxes from a fig5-accuracy sweep. */
import { buildAccuracyFigure } from "../figures.js";
import { runFigureScript } from "./common.js";

runFigureScript("fig5", process.argv.slice(2), buildAccuracyFigure);
