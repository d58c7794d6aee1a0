"""
Click probabilities derived from a MovieLens ratings file.

The L most-rated movies are kept (ties by smaller movieId) and each movie's click probability
is the share of its ratings at or above a threshold.
"""
import hashlib
from functools import lru_cache
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..core.errors import DataFileError
from ..core.logger import get_logger

logger = get_logger(__name__)

RATINGS_COLUMNS = ["userId", "movieId", "rating", "timestamp"]
MIN_RATING = 0.5
MAX_RATING = 5.0


def _first_bad_line(frame: pd.DataFrame) -> Tuple[int, str]:
    """(1-based file line, column) of the first row that is not fully numeric, or (0, "")."""
    for column in RATINGS_COLUMNS:
        values = pd.to_numeric(frame[column], errors="coerce")
        bad = np.flatnonzero(values.isna().to_numpy())
        if len(bad):
            return int(bad[0]) + 2, column
    return 0, ""


def read_ratings(ratings_file: Union[str, Path]) -> pd.DataFrame:
    """Load and validate a ``userId,movieId,rating,timestamp`` CSV."""
    path = Path(ratings_file)
    if not path.is_file():
        raise DataFileError("ratings file not found", path=str(path))
    try:
        with path.open("r", encoding="utf-8") as fh:
            header = fh.readline().strip()
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError as exc:
        raise DataFileError("empty ratings file", path=str(path)) from exc
    except pd.errors.ParserError as exc:
        raise DataFileError("malformed ratings file", path=str(path), reason=str(exc).strip()) from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFileError("cannot read ratings file", path=str(path), reason=str(exc)) from exc

    if header.split(",") != RATINGS_COLUMNS:
        raise DataFileError("unexpected header", path=str(path), header=header, line=1)

    line, column = _first_bad_line(frame)
    if line:
        raise DataFileError("malformed row", path=str(path), line=line, column=column)

    frame = frame.astype({"userId": "int64", "movieId": "int64", "rating": "float64"})
    out_of_range = np.flatnonzero(~frame["rating"].between(MIN_RATING, MAX_RATING).to_numpy())
    if len(out_of_range):
        raise DataFileError("rating outside [0.5, 5.0]", path=str(path), line=int(out_of_range[0]) + 2)
    return frame


def movie_means(frame: pd.DataFrame, num_items: int, threshold: float = 4.0) -> pd.DataFrame:
    """Per-movie rating count and click probability of the ``num_items`` most-rated movies."""
    grouped = frame.assign(liked=frame["rating"] >= threshold).groupby("movieId")
    table = pd.DataFrame({
        "count": grouped.size(),
        "likes": grouped["liked"].sum(),
    }).reset_index()
    if len(table) < num_items:
        raise DataFileError("not enough distinct movies", available=len(table), requested=num_items)
    table = table.sort_values(["count", "movieId"], ascending=[False, True], kind="mergesort").head(num_items)
    table["mean"] = table["likes"] / table["count"]
    return table.reset_index(drop=True)


@lru_cache(maxsize=8)
def _cached_means(path: str, num_items: int, threshold: float) -> Tuple[float, ...]:
    frame = read_ratings(path)
    table = movie_means(frame, num_items, threshold)
    logger.info(f"Derived {num_items} click probabilities from {len(frame)} ratings in {path}")
    return tuple(table["mean"].tolist())


def ingest_movielens(ratings_file: Union[str, Path], num_items: int, threshold: float = 4.0) -> np.ndarray:
    """Vector of ``num_items`` click probabilities, most-rated movie first."""
    return np.asarray(_cached_means(str(ratings_file), num_items, float(threshold)), dtype=np.float64)


def means_digest(means: Sequence[float]) -> str:
    """sha256 of the means rounded to 12 decimals."""
    text = ",".join(f"{float(m):.12f}" for m in means)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
