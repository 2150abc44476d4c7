"""模式理论表示：生成器与配置"""

from .generators import (
    Bond,
    Generator,
    GeneratorSpace,
    make_feature,
    make_grounded,
    make_ungrounded,
    open_bonds,
    support_bond_energy,
    values_match,
)
from .configuration import (
    Configuration,
    ConfigurationCostModel,
    Edge,
    connect,
    cost_q,
    disconnect,
    energy,
    format_semantic_content,
    probability_weight,
    semantic_content,
    validate,
)

__all__ = [
    "Bond",
    "Generator",
    "GeneratorSpace",
    "make_feature",
    "make_grounded",
    "make_ungrounded",
    "open_bonds",
    "support_bond_energy",
    "values_match",
    "Configuration",
    "ConfigurationCostModel",
    "Edge",
    "connect",
    "cost_q",
    "disconnect",
    "energy",
    "format_semantic_content",
    "probability_weight",
    "semantic_content",
    "validate",
]
