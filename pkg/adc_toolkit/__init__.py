"""Augmented directed complexes, their Steiner nerves and slice transfer."""

from adc_toolkit.complexes import atom, build_complex, classify_basis, validate_complex
from adc_toolkit.config import LimitsConfig, get_limits_config
from adc_toolkit.enumeration import enumerate_cells, enumerate_morphisms, nerve
from adc_toolkit.errors import AdcError, AdcInputError, CapExceededError, InternalConsistencyError
from adc_toolkit.homology import homology, reduced_homology_vanishes
from adc_toolkit.models import (
    AdcComplex,
    AdcMorphism,
    Antihomotopy,
    ChainElement,
    EnumerationBudget,
    NuCell,
    RetractStructure,
    SimplexMap,
    ValidationReport,
    Verdict,
)
from adc_toolkit.monoidal import disk_complex, join_complex, pushout_along_rigid_inclusion, tensor_complex
from adc_toolkit.morphisms import validate_antihomotopy, validate_morphism, validate_retract_structure
from adc_toolkit.orientals import aw_diagonal, g_phi, oriental_complex, vertex_retraction
from adc_toolkit.parser import parse_adc_file, parse_morphism_file, parse_simplicial_file
from adc_toolkit.slice_transfer import chi, psi, slice_sdr_suite
from adc_toolkit.slices import slice_over, slice_under

__all__ = [
    'AdcComplex',
    'AdcMorphism',
    'Antihomotopy',
    'ChainElement',
    'EnumerationBudget',
    'NuCell',
    'RetractStructure',
    'SimplexMap',
    'ValidationReport',
    'Verdict',
    'AdcError',
    'AdcInputError',
    'CapExceededError',
    'InternalConsistencyError',
    'LimitsConfig',
    'get_limits_config',
    'build_complex',
    'validate_complex',
    'classify_basis',
    'atom',
    'validate_morphism',
    'validate_antihomotopy',
    'validate_retract_structure',
    'tensor_complex',
    'join_complex',
    'disk_complex',
    'pushout_along_rigid_inclusion',
    'oriental_complex',
    'aw_diagonal',
    'g_phi',
    'vertex_retraction',
    'enumerate_cells',
    'enumerate_morphisms',
    'nerve',
    'slice_under',
    'slice_over',
    'homology',
    'reduced_homology_vanishes',
    'psi',
    'chi',
    'slice_sdr_suite',
    'parse_adc_file',
    'parse_morphism_file',
    'parse_simplicial_file',
]
