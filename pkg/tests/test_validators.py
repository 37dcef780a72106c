"""
Testes do validador de cenários
"""

from dataclasses import replace

from modules.interval_set import EMPTY, normalize
from modules.network_scenario import make_scenario
from utils.validators import ScenarioValidator


class TestScenarioValidator:

    def test_reference_scenario_is_clean(self, mixed_support):
        validator = ScenarioValidator(mixed_support)
        is_valid, _ = validator.validate_all()
        summary = validator.get_summary()
        assert is_valid
        assert summary['errors'] == 0
        assert summary['warnings'] == 0
        assert summary['passed']

    def test_invalid_lengths_stop_early(self):
        s = make_scenario(l_t1=0, l_t2=1, l_r1=1, l_r2=-1)
        is_valid, results = ScenarioValidator(s).validate_all()
        assert not is_valid
        assert [r.field for r in results] == ["l_t1", "l_r2"]
        assert all(r.severity == 'error' for r in results)

    def test_empty_flow_warns(self, mixed_support):
        s = replace(mixed_support, psi_t11=EMPTY)
        is_valid, results = ScenarioValidator(s).validate_all()
        warnings = [r for r in results if r.severity == 'warning']
        assert is_valid
        assert warnings[0].message == "Fluxo 1 sem graus de liberdade"
        assert warnings[0].field == "psi_t11"

    def test_interference_paths(self, interference_free):
        _, results = ScenarioValidator(interference_free).validate_all()
        paths = [r for r in results if r.details and 'inter_node' in r.details]
        assert paths[0].details == {'self_interference': False, 'inter_node': False}

    def test_large_density_warns(self):
        narrow = normalize([(0, "1/127")])
        s = make_scenario(l_t1="1/2", l_t2="1/2", l_r1="1/2", l_r2="1/2",
                          psi_t11=narrow, psi_r11=narrow)
        _, results = ScenarioValidator(s).validate_all()
        density = [r for r in results if r.details and 'density' in r.details]
        assert density[0].severity == 'warning'
        assert density[0].details['density'] == 127

