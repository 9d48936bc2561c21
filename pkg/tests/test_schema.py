import json
import logging
import shutil

import pytest

import secbif.data.critical
import secbif.data.processor.input
import secbif.data.processor.output
import secbif.data.report
import secbif.data.schema.input
import secbif.data.schema.output
import secbif.data.state
import secbif.errors
import secbif.logic.imports

from conftest import fixture_path

VALID_PARAMS = {'m0': 1.0, 'm2': 1e-3, 'm3': 3e-4, 'a2': 1.0, 'a3': 2.0, 'G': 1.0, 'AMD': 1e-5}
THRESHOLD = secbif.data.critical.Threshold(
    kind=secbif.data.critical.CriticalKind.CPI, sigma0=0.00489265, residual=1e-14, method='f1-closed-form',
)
EVENT = secbif.data.critical.BifurcationEvent(
    type=secbif.data.critical.EventType.SADDLE_NODE,
    sigma0_bracket=(0.0065561, 0.0065562),
    participants=('P1', 'P2'),
    energies=(-1e-5, -2e-5),
)


def test_schema_fields_drop_the_decorations(tests_logger: logging.Logger) -> None:
    fields = secbif.data.schema.input.QuadModelSchema.schema_fields()
    assert [*fields] == ['A', 'B', 'C', 'D1', 'Delta1', 'D3', 'Delta3', 'F0', 'F1', 'F2', 'sigma0_max']
    assert [*secbif.data.schema.output.ThresholdRowSchema.schema_fields()] == ['kind', 'sigma0', 'residual', 'method']
    tests_logger.info(f'Quadratic model fields: {", ".join(fields)}')


@pytest.mark.parametrize('field, value', [
    ('m2', -1e-3),
    ('a3', 0),
    ('G', 'one'),
    ('AMD', -1.0),
    ('m0', True),
    ('a2', None),
])
def test_parameters_schema_rejects_invalid_fields(tests_logger: logging.Logger, field: str, value: object) -> None:
    with pytest.raises(secbif.errors.SchemaViolationError) as raised:
        secbif.data.processor.input.ParamsInput.load({**VALID_PARAMS, field: value})
    assert field in str(raised.value)
    assert raised.value.exit_code == 2
    tests_logger.info(f'Rejected {field}={value!r}: {raised.value}')


def test_domain_checks_become_schema_violations(tests_logger: logging.Logger) -> None:
    with pytest.raises(secbif.errors.SchemaViolationError):
        secbif.data.processor.input.ParamsInput.load({**VALID_PARAMS, 'a2': 3.0})
    with pytest.raises(secbif.errors.SchemaViolationError):
        secbif.data.processor.input.ParamsInput.load({**VALID_PARAMS, 'AMD': 1.0})
    params = secbif.data.processor.input.ParamsInput.load(VALID_PARAMS)
    assert isinstance(params, secbif.data.state.SystemParams)
    tests_logger.info('Orbit ordering and AMD bound are enforced on load')


def test_terms_must_carry_every_power(tests_logger: logging.Logger) -> None:
    with pytest.raises(secbif.errors.SchemaViolationError, match='missing p3'):
        secbif.data.processor.input.PolyModelInput.load({'terms': [{'p0': 0, 'p1': 2, 'coef': 1.0}]})
    with pytest.raises(secbif.errors.SchemaViolationError, match='non-negative integer'):
        secbif.data.processor.input.PolyModelInput.load({'terms': [{'p0': 0, 'p1': -1, 'p3': 0, 'coef': 1.0}]})
    with pytest.raises(secbif.errors.SchemaViolationError, match='non-empty list'):
        secbif.data.processor.input.PoincareModelInput.load({'terms': []})
    tests_logger.info('Malformed term lists are rejected')


def test_malformed_json_reports_its_position(tests_logger: logging.Logger) -> None:
    with pytest.raises(secbif.errors.SchemaViolationError, match='line 3, column 8'):
        secbif.logic.imports.load_document(fixture_path('malformed.json'))
    with pytest.raises(secbif.errors.SchemaViolationError, match='expected a JSON object'):
        secbif.data.processor.input.QuadModelInput.load([1, 2, 3])
    tests_logger.info('Malformed JSON carries line and column')


@pytest.mark.parametrize('name, processor', [
    ('params.json', secbif.data.processor.input.ParamsInput),
    ('octupole.json', secbif.data.processor.input.CoefficientsInput),
    ('ellipse.json', secbif.data.processor.input.QuadModelInput),
    ('sextic.json', secbif.data.processor.input.PolyModelInput),
    ('oscillators.json', secbif.data.processor.input.PoincareModelInput),
])
def test_document_kind_is_detected(tests_logger: logging.Logger, name: str, processor: type) -> None:
    loaded = secbif.logic.imports.load_document(fixture_path(name))
    assert loaded.processor is processor
    tests_logger.info(f'{name} read as {processor.name}')


def test_unknown_documents_are_rejected(tests_logger: logging.Logger) -> None:
    with pytest.raises(secbif.errors.SchemaViolationError, match='Unrecognized document'):
        secbif.logic.imports.detect_input({'alpha': 1.0})
    with pytest.raises(secbif.errors.SchemaViolationError):
        secbif.logic.imports.quad_model(secbif.logic.imports.load_document(fixture_path('params.json')))
    tests_logger.info('Unknown documents raise schema violations')


def test_non_quadratic_models_have_no_quadratic_form(tests_logger: logging.Logger) -> None:
    loaded = secbif.logic.imports.load_document(fixture_path('sextic.json'))
    assert loaded.sigma0_max == 0.5
    assert secbif.logic.imports.quad_model(loaded) is None
    assert secbif.logic.imports.hopf_model(loaded).degree == 6
    tests_logger.info('Sextic model stays polynomial')


def test_models_directory(tests_logger: logging.Logger, tmp_path) -> None:
    for name in ('ellipse.json', 'hyperbola.json', 'params.json'):
        shutil.copy(fixture_path(name), tmp_path / name)
    (tmp_path / 'notes.txt').write_text('not a model', encoding='utf-8')
    documents = secbif.logic.imports.load_models(str(tmp_path))
    assert [*documents] == ['ellipse', 'hyperbola', 'params']
    assert documents['ellipse'].sigma0_max == 0.0162044
    with pytest.raises(ValueError, match='Invalid models directory'):
        secbif.logic.imports.load_models(str(tmp_path / 'missing'))
    tests_logger.info(f'Loaded models: {", ".join(documents)}')


def test_report_routes_records_to_sections(tests_logger: logging.Logger) -> None:
    report = secbif.data.report.Report(input=secbif.data.processor.input.QuadModelInput)
    report.add_output(secbif.data.processor.output.ThresholdOutput())
    report.add_output(secbif.data.processor.output.EventOutput())
    report.add_output(secbif.data.processor.output.FlagOutput())
    dropped = report.process([THRESHOLD, EVENT, 'hyperbolic-ordering', 42])
    assert dropped == 1
    assert report.outputs['thresholds'].rows == [{
        'kind': 'CPI', 'sigma0': 0.00489265, 'residual': 1e-14, 'method': 'f1-closed-form',
    }]
    assert report.outputs['events'].rows[0]['participants'] == ['P1', 'P2']
    assert report.outputs['flags'].rows == [{'flag': 'hyperbolic-ordering'}]
    model = report.ingest(fixture_path('ellipse.json'))
    assert model.A == 0.00212824
    tests_logger.info('Records land in the matching sections')


def test_report_sections_can_be_removed(tests_logger: logging.Logger) -> None:
    report = secbif.data.report.Report()
    report.add_output(secbif.data.processor.output.FlagOutput())
    report.remove_output('thresholds')
    assert [*report.outputs] == ['flags']
    report.remove_output('flags')
    assert report.outputs == {}
    with pytest.raises(ValueError, match='Report not initialized'):
        report.ingest(fixture_path('ellipse.json'))
    tests_logger.info('Sections are removed by name')


def test_sections_render_as_csv_and_json(tests_logger: logging.Logger) -> None:
    report = secbif.data.report.Report()
    report.add_output(secbif.data.processor.output.EventOutput())
    report.add_output(secbif.data.processor.output.ThresholdOutput())
    report.process([EVENT, THRESHOLD])
    csv_documents = report.render('csv')
    assert [*csv_documents] == ['events', 'thresholds']
    assert csv_documents['thresholds'].splitlines() == [
        'kind,sigma0,residual,method',
        'CPI,0.00489265,1e-14,f1-closed-form',
    ]
    assert csv_documents['events'].splitlines()[1].startswith('saddle-node,')
    assert ',P1;P2,' in csv_documents['events']
    assert json.loads(report.render('json')['events'])[0]['sigma0_high'] == 0.0065562
    with pytest.raises(ValueError, match='Unsupported output format'):
        report.render('xml')
    tests_logger.info('Sections render in both formats')


def test_empty_section_still_has_a_header(tests_logger: logging.Logger) -> None:
    output = secbif.data.processor.output.DiscrepancyOutput()
    assert output.render('csv') == (
        'sigma0,numeric_count,oracle_count,quartic_count,bruteforce_count,max_angle_error,agree\n'
    )
    assert output.render('json') == '[]\n'
    tests_logger.info('Empty sections keep their header')


def test_rows_with_wrong_types_are_dropped(tests_logger: logging.Logger) -> None:
    assert not secbif.data.schema.output.ThresholdRowSchema.validate({'kind': 'CPI', 'sigma0': '0.1', 'residual': 0.0, 'method': 'x'})
    assert not secbif.data.schema.output.ThresholdRowSchema.validate({'kind': 'CPI'})
    assert secbif.data.schema.output.FlagRowSchema.validate({'flag': 'cpii-complex'})
    tests_logger.info('Row validation checks presence and type')
