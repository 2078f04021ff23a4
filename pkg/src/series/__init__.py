from src.series.evaluate import (
    covariance_lambda,
    covariance_lambda_batch,
    eval_level,
    eval_level_batch,
    eval_series,
    eval_series_batch,
    gradient_batch,
    partial_derivative,
)
from src.series.io import read_series_csv, write_series_csv
from src.series.montecarlo import (
    SeriesSample,
    SmallBallEstimate,
    mc_series,
    mc_indicator_lower_tail,
    mc_small_ball,
    small_ball_curve,
)

__all__ = [
    "SeriesSample",
    "SmallBallEstimate",
    "covariance_lambda",
    "covariance_lambda_batch",
    "eval_level",
    "eval_level_batch",
    "eval_series",
    "eval_series_batch",
    "gradient_batch",
    "mc_indicator_lower_tail",
    "mc_series",
    "mc_small_ball",
    "partial_derivative",
    "read_series_csv",
    "small_ball_curve",
    "write_series_csv",
]
