/** Renders the |error| box plot from a fig10-abs-error sweep. */
import { buildAbsErrorFigure } from "../figures.js";
import { runFigureScript } from "./common.js";

runFigureScript("fig10", process.argv.slice(2), buildAbsErrorFigure);
