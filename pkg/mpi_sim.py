'''
Multiphoton interference simulator, command line

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import io
import os
import sys
import json
import argparse

class ExitCodes():
    'Exit codes'
    Success = 0
    GeneralError = 1
    SuiteFailure = 1
    InvalidArgument = 2
    ConsistencyError = 3
    OutputError = 4
    IncompleteProgram = 128
    MissingDependency = 129
    UserInterrupt = 254

def info(*args, **kwargs):
    'Just `print` to `stdout`'
    print(*args, **kwargs, file=sys.stdout, flush=True)

def error(*args, exception=None, **kwargs):
    '`print` to `stderr`, or optionally raise an exception'
    if exception is not None:
        raise exception(*args)
    else:
        print(*args, **kwargs, file=sys.stderr, flush=True)

def fatal(*args, code=ExitCodes.GeneralError, **kwargs):
    '`print` to `stderr`, and exit with `code`'
    print(*args, **kwargs, file=sys.stderr, flush=True)
    sys.exit(code)

# Do i18n first

try:
    from mpi_lib.i18n import i18n
except ImportError:
    fatal(
        'Folder "mpi_lib" is incomplete or missing, please check.',
        code=ExitCodes.IncompleteProgram
    )

# Test if the numeric stack is there

for _module in ('numpy', 'scipy', 'pandas'):
    try:
        __import__(_module)
    except ImportError:
        fatal(
            i18n('please-install-0-via-pip', _module),
            f' $ pip3 install {_module}',
            code=ExitCodes.MissingDependency,
            sep='\n'
        )

# Import essential basic parts

try:
    import pandas as pd
    from mpi_lib.config import (ScenarioConfig, apply_environment, complex_to_json,
                                load_config, parse_floats, parse_pattern, parse_state_spec,
                                parse_unitary_spec, save_config)
    from mpi_lib.devices import device_summary
    from mpi_lib.errors import ConsistencyError, OutputError, ValidationError
    from mpi_lib.experiments import volume_scenario
    from mpi_lib.figures import Figures, figure_curves, figure_path, format_number, write_csv
    from mpi_lib.scattering import InputSpec, PermanentEngine
    from mpi_lib.states import pairwise_trace, triple_trace
    from mpi_lib.verify import Suites, run_suites
except ImportError:
    fatal(
        i18n('folder-mpi_lib-is-incomplete-or-missing-please-check'),
        code=ExitCodes.IncompleteProgram
    )

# Helpers

def rounded(value: float) -> float:
    'A float that prints with at most 12 significant digits'
    return float(format_number(value))

def rounded_complex(value) -> list:
    return [rounded(x) for x in complex_to_json(value)]

def emit(text: str, path=None):
    'Write to `path`, or to stdout when there is none'
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as file:
            file.write(text)
    except OSError as e:
        error('cannot-write-0-1', path, e.strerror or str(e), exception=OutputError)

# Commands

def cmd_probability(settings: ScenarioConfig) -> int:
    'P(s) for one pattern, or the whole output distribution'
    interferometer = parse_unitary_spec(settings.unitary)
    states = parse_state_spec(settings.states or settings.prep)
    if settings.input:
        occupations = parse_pattern(settings.input)
    else:
        if len(states) > interferometer.dim:
            error('too-many-photons-for-modes-0-1', len(states), interferometer.dim,
                  exception=ValidationError)
        occupations = (1,) * len(states) + (0,) * (interferometer.dim - len(states))
    spec = InputSpec(occupations, states)
    engine = PermanentEngine()
    if settings.pattern:
        pattern = parse_pattern(settings.pattern)
        distribution = {pattern: engine.probability(interferometer, spec, pattern)}
    else:
        distribution = engine.distribution(interferometer, spec)

    if settings.format == 'csv':
        frame = pd.DataFrame(
            [list(pattern) + [probability] for pattern, probability in distribution.items()],
            columns=[f's{i + 1}' for i in range(interferometer.dim)] + ['probability'])
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator='\n', float_format=format_number)
        emit(buffer.getvalue(), settings.output)
        return ExitCodes.Success

    record = {
        'unitary': settings.unitary,
        'matrix': [[rounded_complex(x) for x in row] for row in interferometer.matrix],
        'input': list(occupations),
        'states': [{'dim': s.dim, 'rho': [[rounded_complex(x) for x in row] for row in s.matrix]}
                   for s in states],
        'outcomes': [{'pattern': list(pattern), 'probability': rounded(probability)}
                     for pattern, probability in distribution.items()],
    }
    if len(states) >= 2:
        record['pairwise_trace'] = rounded(pairwise_trace(states[0], states[1]))
    if len(states) >= 3:
        record['triple_trace'] = rounded_complex(triple_trace(*states[:3]))
    if not settings.pattern:
        record['total'] = rounded(sum(distribution.values()))
    emit(json.dumps(record, indent=4) + '\n', settings.output)
    return ExitCodes.Success

def cmd_figures(settings: ScenarioConfig) -> int:
    'One CSV per figure table'
    names = list(Figures) if settings.figure in (None, 'all') else [settings.figure]
    directory = settings.output_dir
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        error('cannot-write-0-1', directory, e.strerror or str(e), exception=OutputError)
    for name in names:
        frame = figure_curves(name, settings.grid)
        path = figure_path(directory, name)
        try:
            write_csv(frame, path)
        except OSError as e:
            error('cannot-write-0-1', path, e.strerror or str(e), exception=OutputError)
        info(i18n('wrote-0-rows-to-1', len(frame), path))
    return ExitCodes.Success

def cmd_volume(settings: ScenarioConfig) -> int:
    'Mix the first photon, sweep a delay, infer its Bloch length from the measured volume'
    report = volume_scenario(settings.weight, parse_floats(settings.dots, 3),
                             settings.vabc, settings.sigma_t)
    for estimate in (report.inferred, report.inferred_from_dots):
        if estimate.out_of_model:
            error(i18n('length-estimate-out-of-model-0', format_number(estimate.raw)))
    record = {
        'weight': rounded(report.weight),
        'target_dots': [rounded(x) for x in report.target_dots],
        'target_vabc': rounded(report.target_vabc),
        'realized_vabc': rounded(report.realized_vabc),
        'bloch_vectors': [[rounded(x) for x in row] for row in report.bloch_vectors],
        'dots': [rounded(x) for x in report.dots],
        'extracted_vabc': rounded(report.extracted_vabc),
        'inferred_length': rounded(report.inferred.length),
        'inferred_length_from_dots': rounded(report.inferred_from_dots.length),
        'expected_length': rounded(report.expected_length),
    }
    emit(json.dumps(record, indent=4) + '\n', settings.output)
    return ExitCodes.Success

def _report(result):
    info(i18n('suite-0-1-max-deviation-2-threshold-3',
              result.name,
              i18n('pass') if result.passed else i18n('fail'),
              f'{result.max_deviation:.3e}',
              f'{result.threshold:.0e}'))
    for key, value in result.details.items():
        info(f'    {key}: {value}')

def cmd_verify(settings: ScenarioConfig) -> int:
    'Randomized equivalence and identity suites; exit 1 if any fails'
    names = None if settings.suite in (None, 'all') else [settings.suite]
    report = run_suites(settings.seed, names, settings.trials, on_result=_report)
    info(i18n('seed-0-generator-1', report.seed, report.generator))
    if report.passed:
        info(i18n('all-suites-passed'))
        return ExitCodes.Success
    error(i18n('some-suites-failed'))
    return ExitCodes.SuiteFailure

Commands = {
    'prob': cmd_probability,
    'figures': cmd_figures,
    'verify': cmd_verify,
    'volume': cmd_volume,
}

class HelpFormatterI18n(argparse.HelpFormatter):
    'Localized usage prefix, without the hardcoded colon in section titles'

    class _Section(argparse.HelpFormatter._Section):    # pylint: disable=protected-access

        def format_help(self):
            lines = super().format_help().split('\n')
            if len(lines) > 1 and lines[1].endswith(':'):
                lines[1] = lines[1][:-1] + '\n'
            return '\n'.join(lines)

    def _format_usage(self, usage, actions, groups, prefix=None):
        return super()._format_usage(usage, actions, groups, i18n('usage-'))

class ArgumentParserI18n(argparse.ArgumentParser):
    'For using our i18n instead of gettext'

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs, formatter_class=HelpFormatterI18n, add_help=False)
        del self._positionals
        del self._optionals
        add_group = self.add_argument_group
        self._positionals = add_group(i18n('positional-arguments-'))
        self._optionals = add_group(i18n('options-'))
        self.add_argument('-h', '--help', action='help',
                help=i18n('show-this-help-message'))

    def add_argument(self, *args, **kwargs):
        if ('required' not in kwargs and kwargs.get('action') != 'help'
                and len(args) > 1 and args[1].startswith('-')):
            kwargs['required'] = False
        return super().add_argument(*args, **kwargs)

def make_parser() -> ArgumentParserI18n:
    parser = ArgumentParserI18n(prog='mpi_sim.py',
                                description=i18n('multiphoton-interference-simulator'))
    parser.add_argument('--config', metavar='File', type=str, default=None,
            help=i18n('read-settings-from-json-file'))
    parser.add_argument('--save-config', metavar='File', type=str, default=None,
            help=i18n('write-effective-settings-to-json-file'))
    commands = parser.add_subparsers(dest='command', metavar='prob|figures|verify|volume',
                                     parser_class=ArgumentParserI18n)
    commands.required = True

    prob = commands.add_parser('prob', help=i18n('output-probabilities'))
    prob.add_argument('-u', '--unitary', metavar='tritter|bs|File', type=str, default=None,
            help=i18n('interferometer-name-or-matrix-file-0', device_summary()))
    states = prob.add_mutually_exclusive_group()
    states.add_argument('-p', '--prep', metavar='flower:Theta|mixed:P', type=str, default=None,
            help=i18n('named-three-photon-preparation'))
    states.add_argument('-s', '--states', metavar='File', type=str, default=None,
            help=i18n('internal-states-file'))
    prob.add_argument('-i', '--input', metavar='1,1,0', type=str, default=None,
            help=i18n('input-occupations-default-first-modes'))
    prob.add_argument('-t', '--pattern', metavar='1,1,1', type=str, default=None,
            help=i18n('output-pattern-default-all'))
    prob.add_argument('-f', '--format', choices=('json', 'csv'), default=None,
            help=i18n('output-format'))
    prob.add_argument('-o', '--output', metavar='File', type=str, default=None,
            help=i18n('output-file-default-stdout'))

    figures = commands.add_parser('figures', help=i18n('write-figure-tables'))
    figures.add_argument('--id', dest='figure', choices=('all', *Figures), default=None,
            help=i18n('figure-id'))
    figures.add_argument('-g', '--grid', metavar='N', type=int, default=None,
            help=i18n('samples-per-curve'))
    figures.add_argument('-o', '--output', dest='output_dir', metavar='Dir', type=str, default=None,
            help=i18n('output-directory'))

    verify = commands.add_parser('verify', help=i18n('run-verification-suites'))
    verify.add_argument('--seed', type=int, default=None,
            help=i18n('random-seed'))
    verify.add_argument('--trials', type=int, default=None,
            help=i18n('trials-per-suite'))
    verify.add_argument('--suite', choices=('all', *Suites), default=None,
            help=i18n('suite-to-run'))

    volume = commands.add_parser('volume', help=i18n('infer-bloch-length-from-volume'))
    volume.add_argument('-w', '--weight', metavar='W', type=float, default=None,
            help=i18n('weight-of-first-photon-pure-state'))
    volume.add_argument('--dots', metavar='AB,AC,BC', type=str, default=None,
            help=i18n('target-bloch-dot-products'))
    volume.add_argument('--vabc', metavar='V', type=float, default=None,
            help=i18n('target-bloch-volume'))
    volume.add_argument('--sigma-t', metavar='T', type=float, default=None,
            help=i18n('wavepacket-duration'))
    volume.add_argument('-o', '--output', metavar='File', type=str, default=None,
            help=i18n('output-file-default-stdout'))
    return parser

def settings_from(args, environment=None) -> ScenarioConfig:
    'Defaults < config file < environment < flags'
    settings = ScenarioConfig.defaults()
    if args.config:
        load_config(args.config, settings)
    apply_environment(settings, environment)
    for key, value in vars(args).items():
        if value is not None and key not in ('config',):
            settings[key] = value
    if getattr(args, 'prep', None):
        settings.states = None
    return settings.validate()

def _main(argv=None) -> int:
    'Main routine for direct command line execution'
    args = make_parser().parse_args(argv)
    settings = settings_from(args)
    if settings.save_config:
        try:
            save_config(settings, settings.save_config)
        except OSError as e:
            error('cannot-write-0-1', settings.save_config, e.strerror or str(e),
                  exception=OutputError)
    return Commands[args.command](settings)

def main(argv=None):
    'Run the `_main` routine while catching exceptions'
    try:
        code = _main(argv)
    except ValidationError as e:
        fatal(e.message_localized, code=ExitCodes.InvalidArgument)
    except ConsistencyError as e:
        fatal(e.message_localized, code=ExitCodes.ConsistencyError)
    except OutputError as e:
        fatal(e.message_localized, code=ExitCodes.OutputError)
    except KeyboardInterrupt:
        fatal(i18n('stopping'), code=ExitCodes.UserInterrupt)
    sys.exit(code)

if __name__ == '__main__':
    main()
