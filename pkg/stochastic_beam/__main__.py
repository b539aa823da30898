import sys

from stochastic_beam.app import App
from stochastic_beam.common.exceptions.app import AppException
from stochastic_beam.common.logger import Logger


def main() -> int:
    try:
        app = App()
        app.build_args()
        return app.run()
    except AppException as ex:
        Logger(__name__).critical(str(ex))
        return 2


if __name__ == '__main__':
    sys.exit(main())
