from typing import Dict, Type

from skorokhod_integrals.scenarios.base import (
    MIN_INDEX,
    Functional,
    LimitAtom,
    LimitLaw,
    Scenario,
    ScenarioSample,
    check_index,
)
from skorokhod_integrals.scenarios.conditions import (
    Condition,
    check_R1,
    check_R2_tail,
    empirical_condition,
)
from skorokhod_integrals.scenarios.examples import (
    M1J1,
    AntiAVCI,
    Example11,
    Example21,
    anti_avci_scenario,
    example_1_1,
    example_2_1,
    m1_j1_scenario,
)
from skorokhod_integrals.scenarios.families import gd_family
from skorokhod_integrals.utils.exceptions import ConfigError

SCENARIOS: Dict[str, Type[Scenario]] = {
    cls.name: cls for cls in (Example11, Example21, AntiAVCI, M1J1)
}


def build_scenario(name: str, **params) -> Scenario:
    """Instantiates a registered scenario by name."""
    try:
        scenario_cls = SCENARIOS[name]
    except KeyError:
        raise ConfigError(f"Unknown scenario {name!r}, expected one of {sorted(SCENARIOS)}.")
    return scenario_cls(**params)
