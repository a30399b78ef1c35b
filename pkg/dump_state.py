"""Evolve one scenario to a single xi and write the state as a binary Fock dump."""
import argparse
import sys
import traceback
from pathlib import Path

from config import CACHE_DIR, logger

from src.scan import ScanContext, ScenarioConfig, builtin_scenario
from src.utils.errors import ConfigError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin")
    source.add_argument("--config")
    parser.add_argument("--xi", type=float, required=True)
    parser.add_argument("--reduced", action="store_true")
    parser.add_argument("--out", type=Path, default=CACHE_DIR)
    args = parser.parse_args(argv)

    try:
        config = builtin_scenario(args.builtin) if args.builtin else ScenarioConfig.load(args.config)
        if args.reduced:
            config = config.reduced()
        psi = ScanContext(config).state_at(args.xi)
        args.out.mkdir(parents=True, exist_ok=True)
        path = args.out / f"{config.name}_xi{args.xi:.4f}.fock"
        psi.dump(path)
        logger.info("modes %s, leakage %.2e, norm drift %.2e",
                    ",".join(psi.modes), psi.meta["leakage"], psi.meta["norm_drift"])
    except ConfigError as exc:
        logger.error("Configuration error: %s", exc)
        return 2
    except Exception:
        logger.error("State dump failed:\n%s", traceback.format_exc())
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
