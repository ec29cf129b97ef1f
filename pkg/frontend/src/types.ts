/** Shared domain types and the JSON shapes served by the API. */

export const METRICS = ["ndcg", "hit_ratio", "recall"] as const;
export type Metric = (typeof METRICS)[number];

export const K_VALUES = [1, 3, 5, 10, 20] as const;
export type KValue = (typeof K_VALUES)[number];

export const TABS = ["aps", "compareAlgorithms", "compareDatasets"] as const;
export type Tab = (typeof TABS)[number];

export function isMetric(value: string): value is Metric {
  return (METRICS as readonly string[]).includes(value);
}

export function isKValue(value: number): value is KValue {
  return (K_VALUES as readonly number[]).includes(value);
}

export function isTab(value: string): value is Tab {
  return (TABS as readonly string[]).includes(value);
}

export interface AlgorithmDto {
  id: number;
  name: string;
}

export interface RiskBandDto {
  bandIndex: number;
  label: string;
  description: string;
  cause: string;
}

export interface DatasetDto {
  id: number;
  name: string;
  numUsers: number;
  numItems: number;
  numInteractions: number;
  userItemRatio: number;
  density: number;
  meanPerUser: number;
  meanPerItem: number;
  maxPerUser: number | null;
  minPerUser: number | null;
  maxPerItem: number | null;
  minPerItem: number | null;
  feedback: string | null;
  risk: {
    userItemRatio: RiskBandDto;
    meanPerUser: RiskBandDto;
    meanPerItem: RiskBandDto;
  };
}

export interface PerformanceRecordDto {
  datasetId: number;
  dataset: string;
  algorithmId: number;
  algorithm: string;
  metric: Metric;
  k: number;
  score: number;
}

export interface PcaPointDto {
  datasetId: number;
  dataset: string;
  x: number;
  y: number;
  varX: number;
  varY: number;
  difficultyScore: number;
  difficultyLabel: string;
}

export interface PcaResponse {
  metric: Metric;
  k: number;
  points: PcaPointDto[];
  explainedRatio: [number, number];
  seed: number;
  bootstrapCount: number;
  computedAt: string;
}
