/** Renders coordinated vs uncoordinated utilisation bars from a fig11 sweep. */
import { buildCoordUtilizationFigure } from "../figures.js";
import { runFigureScript } from "./common.js";

runFigureScript("fig11", process.argv.slice(2), buildCoordUtilizationFigure);
