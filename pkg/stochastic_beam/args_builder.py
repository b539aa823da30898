"""Command-line argument wrapper"""
import os

from argparse import ArgumentParser, Namespace, _ArgumentGroup, _SubParsersAction
from typing import Any, Dict, List, Optional, Sequence

import rapidjson

from stochastic_beam.settings import Settings


class ArgsBuilder:
    """Command-line argument builder.

    Every option defaults to None so that only values given on the command line override
    the configuration file.

    Attributes:
        arguments: Argument declarations read from arguments.json
        parser: ArgumentParser object
        command_parser: Command argument
    """
    TYPES: Dict[str, type] = {'str': str, 'int': int, 'float': float}

    def __init__(self) -> None:
        configuration = os.path.join(Settings.ROOT_DIR, 'arguments.json')
        with open(configuration, 'r', encoding='utf-8') as in_file:
            self.arguments: Dict[str, Any] = rapidjson.loads(in_file.read())
        self.parser = ArgumentParser(
            prog='stochastic_beam',
            description='''Sampling sequences without replacement with stochastic beam search.'''
        )
        self.parser.add_argument(
            '--version', '-v',
            action='version',
            version=f'stochastic_beam {Settings.VERSION}'
        )
        self.command_parser: _SubParsersAction = self.parser.add_subparsers(dest='command')
        self.command_parser.required = True

    @property
    def commands(self) -> List[str]:
        """Return all sub-commands."""
        return list(self.arguments['commands'])

    def build(self) -> None:
        """Build command-line arguments."""
        for command, args in self.arguments['commands'].items():
            command_parser = self.command_parser.add_parser(command, help=args['help'])
            command_optional = command_parser.add_argument_group(
                'Optionals', 'Command parameters, they override the configuration file.'
            )
            self._add_optionals(command_optional, args['optionals'])
            common = command_parser.add_argument_group('Common')
            self._add_optionals(common, self.arguments['common'])

    def _add_optionals(self, group: _ArgumentGroup, optionals: List[Dict[str, Any]]) -> None:
        for optional in optionals:
            options: Dict[str, Any] = {'help': optional.get('help'), 'default': None}
            if optional.get('dest'):
                options['dest'] = optional['dest']
            if optional.get('action'):
                options['action'] = optional['action']
            if optional.get('action') != 'store_true':
                options['type'] = self.TYPES[optional.get('type', 'str')]
            if optional.get('nargs'):
                options['nargs'] = optional['nargs']
            if optional.get('choices'):
                options['choices'] = optional['choices']
            group.add_argument(*optional['key'], **options)

    def parse(self, argv: Optional[Sequence[str]] = None) -> Namespace:
        """Parse arguments."""
        return self.parser.parse_args(argv)
