import argparse
import logging
import sys
from typing import List, Optional, TextIO

from dotenv import load_dotenv
from pydantic import ValidationError

from src.config import Settings
from src.exceptions import CoulombError
from src.models.run_config import RunConfig

from .handlers import CoulombCli
from .handlers.base_handlers import parse_vector

logger = logging.getLogger(__name__)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Namespace argparse → RunConfig (позиционный файл у каждой команды свой)"""
    input_path = getattr(args, "theory", None) or getattr(args, "sequence", None) or getattr(args, "quiver", None)
    return RunConfig(
        command=args.command,
        input_path=input_path,
        order=getattr(args, "order", None),
        refined=getattr(args, "refined", False),
        shift=parse_vector(getattr(args, "shift", None), "shift"),
        seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", None),
        as_json=args.as_json,
        exprs=tuple(getattr(args, "expr", None) or ()),
        lattice_point=parse_vector(getattr(args, "lattice_point", None), "lattice point"),
        output_path=getattr(args, "output_path", None),
    )


def configure_logging(settings: Settings, verbose: bool, debug: bool):
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    # stdout занят результатом, логи идут в stderr
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    load_dotenv()
    try:
        settings = Settings()
    except ValidationError as e:
        print(f"error: bad environment configuration: {e}", file=sys.stderr)
        return 2

    cli = CoulombCli(settings, out=out)
    parser = cli.build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as se:
        # argparse: 0 для --help, 2 для ошибок использования
        return int(se.code or 0)

    configure_logging(settings, args.verbose, args.debug)

    try:
        cfg = config_from_args(args)
        return cli.run(cfg)
    except CoulombError as e:
        logger.debug("❌ Ошибка выполнения команды", exc_info=True)
        print(str(e), file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
