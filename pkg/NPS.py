import asyncio
import logging
import sys

from View import View, config_from_args, create_parser
from errors import PnpsError
from settings import LOG_FORMAT

logger = logging.getLogger(__name__)


async def main(argv=None, stdout=None):
    args = create_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    try:
        view = View(config_from_args(args), stdout=stdout)
        return await view.main()
    except PnpsError as exc:
        logger.error(str(exc))
        return 2


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    sys.exit(asyncio.run(main()))
