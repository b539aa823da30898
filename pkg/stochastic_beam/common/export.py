"""Writing result tables and their metadata"""
import csv
import sys

from typing import Any, Iterable, List, Optional

import rapidjson

from stochastic_beam.common.logger import Logger
from stochastic_beam.config import RunConfig
from stochastic_beam.settings import Settings


def write_table(path: Optional[str], header: List[str], rows: Iterable[List[Any]]) -> None:
    """Write a CSV table to `path`, or to stdout when no path is given."""
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as output:
            csv_writer = csv.writer(output, lineterminator='\n')
            csv_writer.writerow(header)
            csv_writer.writerows(rows)
        Logger(__name__).info('Results written to %s', path)
    else:
        csv_writer = csv.writer(sys.stdout, lineterminator='\n')
        csv_writer.writerow(header)
        csv_writer.writerows(rows)


def write_meta(path: Optional[str], config: RunConfig) -> None:
    """Write `PATH.meta.json` next to an output file: version, generator, seed and configuration."""
    if not path:
        return
    meta = {
        'version': Settings.VERSION,
        'generator': Settings.GENERATOR,
        'seed': config.seed,
        'config': config.json_serialize(),
    }
    write_json(f'{path}.meta.json', meta)


def write_json(path: str, data: Any) -> None:
    with open(path, 'w', encoding='utf-8') as output:
        output.write(rapidjson.dumps(data, indent=2, sort_keys=True))
        output.write('\n')
