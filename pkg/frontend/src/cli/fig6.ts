/** Renders the utilisation-vs-radius bars from a fig6-utilization sweep. */
import { buildUtilizationFigure } from "../figures.js";
import { runFigureScript } from "./common.js";

runFigureScript("fig6", process.argv.slice(2), buildUtilizationFigure);
