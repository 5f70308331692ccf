"""
モンテカルロマネージャーモジュール

ブロックフェージングのモンテカルロシミュレーションで、
オウンゴール確率・アウテージレート・非アウテージ盗聴確率を推定します。
乱数ストリームはチャンクごとに (seed, チャンク番号) から決まるため、
結果はワーカー数に依存しません。
"""

import math
import logging
from typing import List, NamedTuple, Optional

import numpy as np

from ..exceptions import DomainError
from ..models import BlockDraw, JammingStrategy, MonteCarloEstimate, ScenarioParams
from .cache_handler import ResultCacheHandler, make_cache_key
from .parallel_handler import ParallelHandler
from .rates import jammed_rate
from .scenario import check_strategy

# ロガーの設定
logger = logging.getLogger(__name__)

MIN_SAMPLES = 10_000
DEFAULT_CHUNK_SIZE = 65536
# 無限大のジャミング電力はこの値で打ち切る
POWER_CAP = 1e15


class BlockBatch(NamedTuple):
    """複数ブロック分のシミュレーション結果（配列）"""
    chosen_channel: np.ndarray
    sinr: np.ndarray
    monitor_rate: np.ndarray
    own_goal: np.ndarray


class ChunkTask(NamedTuple):
    params: ScenarioParams
    strategy: JammingStrategy
    seed: int
    index: int
    size: int
    rate: Optional[float]


class ChunkResult(NamedTuple):
    own_goal_count: int
    success_count: int
    best_rates: np.ndarray


def make_generator(seed: int, index: int) -> np.random.Generator:
    """(seed, チャンク番号) から独立した乱数生成器を作る"""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(sequence))


def simulate_blocks(
    params: ScenarioParams, strategy: JammingStrategy, rng: np.random.Generator, size: int
) -> BlockBatch:
    """size ブロック分のチャネル利得を生成し、チャネル選択とオウンゴールを判定する

    先頭 jammed_count 本のチャネルがジャミングされる。
    """
    n_channels = params.n_channels
    gain_sr = rng.exponential(1.0 / params.lambda_a, size=(size, n_channels))
    gain_monitor_sr = rng.exponential(1.0 / params.lambda_c, size=(size, n_channels))
    gain_st_monitor = rng.exponential(1.0 / params.lambda_b, size=(size, n_channels))

    jamming = np.zeros(n_channels)
    if strategy.jammed_count:
        jamming[: strategy.jammed_count] = np.minimum(np.asarray(strategy.powers, dtype=float), POWER_CAP)

    sinr = gain_sr * params.tx_power / (gain_monitor_sr * jamming + params.noise_sr)
    chosen = np.argmax(sinr, axis=1)
    rows = np.arange(size)
    best_sinr = sinr[rows, chosen]
    monitor_snr = gain_st_monitor[rows, chosen] * params.tx_power / params.noise_monitor
    return BlockBatch(
        chosen_channel=chosen,
        sinr=best_sinr,
        monitor_rate=np.log2(1.0 + monitor_snr),
        own_goal=chosen < strategy.jammed_count,
    )


def simulate_block(params: ScenarioParams, strategy: JammingStrategy, rng: np.random.Generator) -> BlockDraw:
    """1ブロック分のシミュレーション"""
    check_strategy(params, strategy)
    batch = simulate_blocks(params, strategy, rng, 1)
    return BlockDraw(
        chosen_channel=int(batch.chosen_channel[0]),
        sinr=float(batch.sinr[0]),
        monitor_rate=float(batch.monitor_rate[0]),
        own_goal=bool(batch.own_goal[0]),
    )


def run_chunk(task: ChunkTask) -> ChunkResult:
    """1チャンク分のシミュレーションと集計（ワーカープロセスで実行される）"""
    rng = make_generator(task.seed, task.index)
    batch = simulate_blocks(task.params, task.strategy, rng, task.size)
    success = 0
    if task.rate is not None:
        success = int(np.count_nonzero(~batch.own_goal & (batch.monitor_rate >= task.rate)))
    return ChunkResult(
        own_goal_count=int(np.count_nonzero(batch.own_goal)),
        success_count=success,
        best_rates=np.log2(1.0 + batch.sinr),
    )


def _binomial_estimate(count: int, samples: int, seed: int) -> MonteCarloEstimate:
    p = count / samples
    return MonteCarloEstimate(value=p, std_error=math.sqrt(p * (1.0 - p) / samples), samples=samples, seed=seed)


def _quantile_estimate(rates: np.ndarray, delta: float, samples: int, seed: int) -> MonteCarloEstimate:
    """δ 分位点の推定

    分位点は ceil(δm) 番目の順序統計量。標準誤差は
    順位 ±sqrt(mδ(1-δ)) の順序統計量の幅の半分とする。
    """
    rank = max(math.ceil(delta * samples), 1) - 1
    spread = math.ceil(math.sqrt(samples * delta * (1.0 - delta)))
    low = max(rank - spread, 0)
    high = min(rank + spread, samples - 1)
    ordered = np.partition(rates, sorted({low, rank, high}))
    return MonteCarloEstimate(
        value=float(ordered[rank]),
        std_error=float(ordered[high] - ordered[low]) / 2.0,
        samples=samples,
        seed=seed,
    )


class EstimateSet(NamedTuple):
    """同じブロック列から求めた ρ・R・φ の推定値"""
    own_goal: MonteCarloEstimate
    rate: MonteCarloEstimate
    phi: MonteCarloEstimate


class MonteCarloManager:
    """モンテカルロ推定を担当するクラス"""

    def __init__(
        self,
        cache_handler: Optional[ResultCacheHandler] = None,
        parallel_handler: Optional[ParallelHandler] = None,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
    ):
        """MonteCarloManagerの初期化

        Args:
            cache_handler (Optional[ResultCacheHandler], optional): 結果キャッシュ。Noneなら無効。
            parallel_handler (Optional[ParallelHandler], optional): 並列実行ハンドラー。Noneなら逐次。
            chunk_size (int, optional): 1チャンクあたりのブロック数
        """
        self.cache_handler = cache_handler
        self.parallel_handler = parallel_handler or ParallelHandler()
        self.chunk_size = chunk_size

    def _check_inputs(self, params: ScenarioParams, strategy: JammingStrategy, samples: int, seed: int) -> None:
        check_strategy(params, strategy)
        if samples < MIN_SAMPLES:
            raise DomainError(f"サンプル数は{MIN_SAMPLES}以上である必要があります: {samples}")
        if not 0 <= seed < 2**64:
            raise DomainError(f"シードは0以上2^64未満である必要があります: {seed}")

    def _run(
        self,
        params: ScenarioParams,
        strategy: JammingStrategy,
        samples: int,
        seed: int,
        rate: Optional[float] = None,
    ) -> List[ChunkResult]:
        tasks = []
        for index, start in enumerate(range(0, samples, self.chunk_size)):
            size = min(self.chunk_size, samples - start)
            tasks.append(ChunkTask(params, strategy, seed, index, size, rate))
        logger.debug(f"モンテカルロ: {samples}サンプルを{len(tasks)}チャンクで実行します (seed={seed})")
        return self.parallel_handler.map_ordered(run_chunk, tasks)

    def _cached(self, kind: str, *key_parts) -> Optional[MonteCarloEstimate]:
        if self.cache_handler is None:
            return None
        data = self.cache_handler.get_from_cache(make_cache_key(kind, *key_parts))
        return MonteCarloEstimate(**data) if data is not None else None

    def _store(self, kind: str, estimate: MonteCarloEstimate, *key_parts) -> MonteCarloEstimate:
        if self.cache_handler is not None:
            self.cache_handler.save_to_cache(make_cache_key(kind, *key_parts), estimate.model_dump())
        return estimate

    def estimate_own_goal(
        self, params: ScenarioParams, strategy: JammingStrategy, samples: int, seed: int
    ) -> MonteCarloEstimate:
        """オウンゴール確率の推定（標準誤差は二項分布の式）"""
        self._check_inputs(params, strategy, samples, seed)
        cached = self._cached("own_goal", params, strategy, samples, seed, self.chunk_size)
        if cached is not None:
            return cached

        results = self._run(params, strategy, samples, seed)
        count = sum(result.own_goal_count for result in results)
        estimate = _binomial_estimate(count, samples, seed)
        return self._store("own_goal", estimate, params, strategy, samples, seed, self.chunk_size)

    def estimate_rate(
        self, params: ScenarioParams, strategy: JammingStrategy, samples: int, seed: int
    ) -> MonteCarloEstimate:
        """アウテージレートの推定（最良チャネルのレートの δ 分位点）"""
        self._check_inputs(params, strategy, samples, seed)
        cached = self._cached("rate", params, strategy, samples, seed, self.chunk_size)
        if cached is not None:
            return cached

        results = self._run(params, strategy, samples, seed)
        rates = np.concatenate([result.best_rates for result in results])
        estimate = _quantile_estimate(rates, params.outage_target, samples, seed)
        return self._store("rate", estimate, params, strategy, samples, seed, self.chunk_size)

    def estimate_phi(
        self,
        params: ScenarioParams,
        strategy: JammingStrategy,
        samples: int,
        seed: int,
        rate: Optional[float] = None,
        use_empirical_rate: bool = False,
    ) -> MonteCarloEstimate:
        """非アウテージ盗聴確率の推定

        成功 = オウンゴールでない かつ モニターのレートが R 以上。
        R は指定がなければ解析的に求めたレート、use_empirical_rate なら
        同じシードで推定した分位点を使う。
        """
        self._check_inputs(params, strategy, samples, seed)
        if rate is None:
            if use_empirical_rate:
                rate = self.estimate_rate(params, strategy, samples, seed).value
            else:
                rate = jammed_rate(params, strategy).rate
        cached = self._cached("phi", params, strategy, samples, seed, self.chunk_size, rate)
        if cached is not None:
            return cached

        results = self._run(params, strategy, samples, seed, rate=rate)
        count = sum(result.success_count for result in results)
        estimate = _binomial_estimate(count, samples, seed)
        return self._store("phi", estimate, params, strategy, samples, seed, self.chunk_size, rate)

    def estimate_all(
        self,
        params: ScenarioParams,
        strategy: JammingStrategy,
        samples: int,
        seed: int,
        rate: Optional[float] = None,
    ) -> EstimateSet:
        """ρ・R・φ を1回のシミュレーションでまとめて推定する

        各推定値は estimate_own_goal・estimate_rate・estimate_phi を
        同じ引数で呼んだ結果と一致する。

        Args:
            params (ScenarioParams): シナリオ
            strategy (JammingStrategy): ジャミング戦略
            samples (int): サンプル数
            seed (int): 乱数シード
            rate (Optional[float], optional): φ の判定に使うレート。Noneなら解析値。

        Returns:
            EstimateSet: 3つの推定値
        """
        self._check_inputs(params, strategy, samples, seed)
        if rate is None:
            rate = jammed_rate(params, strategy).rate
        keys = {
            "own_goal": (params, strategy, samples, seed, self.chunk_size),
            "rate": (params, strategy, samples, seed, self.chunk_size),
            "phi": (params, strategy, samples, seed, self.chunk_size, rate),
        }
        cached = {kind: self._cached(kind, *parts) for kind, parts in keys.items()}
        if all(estimate is not None for estimate in cached.values()):
            return EstimateSet(**cached)

        results = self._run(params, strategy, samples, seed, rate=rate)
        own_goal = _binomial_estimate(sum(result.own_goal_count for result in results), samples, seed)
        rates = np.concatenate([result.best_rates for result in results])
        quantile = _quantile_estimate(rates, params.outage_target, samples, seed)
        phi = _binomial_estimate(sum(result.success_count for result in results), samples, seed)
        return EstimateSet(
            own_goal=self._store("own_goal", own_goal, *keys["own_goal"]),
            rate=self._store("rate", quantile, *keys["rate"]),
            phi=self._store("phi", phi, *keys["phi"]),
        )
