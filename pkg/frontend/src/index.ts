export { buildLearningCurveOption, PALETTE } from "./learningCurve";
export {
  buildReliabilityOption,
  reliabilityPoints,
  ReliabilityPoint,
} from "./reliability";
export {
  DEFAULT_HEIGHT,
  DEFAULT_WIDTH,
  ImageFormat,
  formatFromPath,
  renderToSvg,
  writeImage,
} from "./render";
export {
  AggregateFile,
  AggregateFileSchema,
  MissingPolicyError,
  PolicySummary,
  ReliabilityBins,
  ReliabilityFile,
  ReliabilityFileSchema,
  loadAggregate,
  loadReliability,
  selectPolicies,
} from "./schema";
export { PlotKind, PlotRequest, plot, plotLearningCurve, plotReliability } from "./plot";
