import sys
import os
import logging
import itertools
from collections import Counter

from dotenv import load_dotenv
from tqdm import tqdm

# Set project root (one level up from /scripts)
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

env_path = os.path.join(project_root, ".env")
load_dotenv(dotenv_path=env_path)

from free_knots.decider import decide_slice, oracle_decide
from free_knots.gauss_code import count_diagrams, enumerate_diagrams, serialize
from free_knots.models import SearchConfig, VerdictKind

# --- Configuration & Logging ---
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_MAX_CHORDS = 5


def sweep(n: int) -> Counter:
    """Compare search and oracle on every diagram with n chords, under all pruning flags."""
    configs = [
        SearchConfig(use_singleton_even_pruning=s, use_equal_parity_pruning=p)
        for s, p in itertools.product([True, False], repeat=2)
    ]
    tally = Counter()
    for diagram in tqdm(enumerate_diagrams(n), total=count_diagrams(n), desc=f"n={n}"):
        reference = oracle_decide(diagram)
        tally[reference.kind.value] += 1
        if reference.odd and reference.kind is VerdictKind.INCONCLUSIVE:
            logger.error(f"Odd diagram left undecided: {serialize(diagram)}")
            tally["undecided_odd"] += 1
        for cfg in configs:
            verdict = decide_slice(diagram, cfg)
            if verdict.kind is not reference.kind:
                logger.error(
                    f"Mismatch on {serialize(diagram)!r} with {cfg}: "
                    f"search says {verdict.kind.value}, oracle says {reference.kind.value}"
                )
                tally["mismatch"] += 1
    return tally


def main():
    max_chords = int(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_MAX_CHORDS
    failures = 0
    for n in range(max_chords + 1):
        tally = sweep(n)
        logger.info(f"n={n}: {dict(tally)}")
        failures += tally["mismatch"] + tally["undecided_odd"]
    if failures:
        logger.critical(f"{failures} disagreement(s) found.")
        sys.exit(1)
    logger.info("Search and oracle agree on every diagram.")


if __name__ == "__main__":
    main()
