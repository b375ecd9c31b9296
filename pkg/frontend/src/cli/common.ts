import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

export function runFigureScript(
  name: string,
  argv: string[],
  build: (inputDir: string) => { svg: string },
): void {
  const [inputDir, outputPath] = argv;
  if (!inputDir || !outputPath) {
    console.error(`usage: ${name} <sweep input dir> <output.svg>`);
    process.exit(2);
  }
  try {
    const { svg } = build(inputDir);
    mkdirSync(dirname(outputPath), { recursive: true });
    writeFileSync(outputPath, svg);
    console.log(outputPath);
  } catch (error) {
    console.error(String(error instanceof Error ? error.message : error));
    process.exit(1);
  }
}
