import sys
import os
import json
import logging

from dotenv import load_dotenv
from tqdm import tqdm

# Set project root (one level up from /scripts)
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

env_path = os.path.join(project_root, ".env")
load_dotenv(dotenv_path=env_path)

from free_knots.decider import decide_slice
from free_knots.gauss_code import canonical_form, canonical_key, count_diagrams, enumerate_diagrams, parse_gauss_code

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

OUTPUT_PATH = os.path.join(project_root, "census.jsonl")


def census(n: int):
    """One record per diagram up to rotation and reflection."""
    seen = set()
    for diagram in tqdm(enumerate_diagrams(n), total=count_diagrams(n), desc=f"n={n}"):
        key = canonical_key(diagram)
        if key in seen:
            continue
        seen.add(key)
        code = canonical_form(diagram)
        verdict = decide_slice(parse_gauss_code(code))
        yield {
            "n": n,
            "code": code,
            "odd": verdict.odd,
            "verdict": verdict.kind.value,
            "pairings_examined": verdict.pairings_examined,
        }


def main():
    max_chords = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    output_path = sys.argv[2] if len(sys.argv) > 2 else OUTPUT_PATH
    counts = {}
    with open(output_path, "w", encoding="utf-8") as f:
        for n in range(max_chords + 1):
            for record in census(n):
                f.write(json.dumps(record) + "\n")
                bucket = counts.setdefault(n, {})
                bucket[record["verdict"]] = bucket.get(record["verdict"], 0) + 1
            logger.info(f"n={n}: {counts.get(n, {})}")
    logger.info(f"Census written to {output_path}")


if __name__ == "__main__":
    main()
