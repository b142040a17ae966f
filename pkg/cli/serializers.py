# cli/serializers.py
"""
Validação das configurações de execução

Este módulo implementa:
- RunConfigSerializer, que valida e converte os valores em texto vindos
  de ficheiros INI e da linha de comando
- A leitura de ficheiros INI e a junção com precedência
  linha de comando > ficheiro > valores por omissão do subcomando

Autor: Sistema Rede SU(3)
Data: 2025
"""

import configparser
import logging

from rest_framework import serializers

from evolution.schemes import NAMED_OPERATORS
from evolution.services import Observable
from gauge_basis.geometry import build_geometry
from local_plaquette.circuits import Encoding
from su3_irreps.domain import Truncation

from .domain import SUBCOMMANDS, RunConfig

logger = logging.getLogger(__name__)

CONFIG_SECTION = 'run'

MODES = ('local', 'global', 'color_parity')
BASIS_SCHEMES = ('exact', 'even_odd', 'local_qudit')

# Valores por omissão que dependem do subcomando
SUBCOMMAND_DEFAULTS = {
    'spectrum': {'geometry': 'two_plaquette_pbc', 'g': '0.5,1.0,2.0'},
    'evolve': {'geometry': 'two_plaquette_pbc'},
    'converge': {'geometry': 'one_plaquette', 'lambdas': '1,2,3,4'},
    'count': {'geometry': 'local_plaquette', 'lambdas': '0,1,2,3'},
    'compile': {'geometry': 'local_plaquette'},
    'benchmark': {'geometry': 'one_plaquette', 'tmax': '8.0'},
    'su2_tail': {'g': '0.2,0.25'},
}


def _split(value):
    return [t.strip() for t in str(value).replace(';', ',').split(',') if t.strip()]


class RunConfigSerializer(serializers.Serializer):
    """
    Serializer de uma configuração de execução

    Todos os campos aceitam texto; trunc, g, lambdas, sectors e window
    são convertidos em objetos. Chaves desconhecidas são rejeitadas.
    """

    subcommand = serializers.ChoiceField(choices=SUBCOMMANDS)
    geometry = serializers.CharField(default='two_plaquette_pbc')
    trunc = serializers.CharField(default='{1,3,3bar}')
    g = serializers.CharField(default='1.0')
    mode = serializers.ChoiceField(choices=MODES, default='global')
    sectors = serializers.CharField(required=False, allow_blank=True, default='')
    tmax = serializers.FloatField(min_value=0.0, default=3.0)
    dt = serializers.FloatField(default=0.1)
    order = serializers.IntegerField(min_value=1, max_value=2, default=1)
    scheme = serializers.CharField(default='exact')
    split_terms = serializers.BooleanField(default=False)
    extrema = serializers.BooleanField(default=False)
    observable = serializers.ChoiceField(choices=[o.value for o in Observable], default='mass_gap')
    lambdas = serializers.CharField(default='1,2,3,4')
    time = serializers.FloatField(required=False, allow_null=True, default=None)
    max_degree = serializers.IntegerField(min_value=0, default=10)
    encoding = serializers.ChoiceField(choices=[e.value for e in Encoding], default='single_qudit')
    j_max = serializers.IntegerField(min_value=1, default=60)
    window = serializers.CharField(required=False, allow_blank=True, default='')
    out = serializers.CharField(default='.')
    format = serializers.ChoiceField(choices=['csv', 'json'], default='csv')
    threads = serializers.IntegerField(min_value=0, default=0)

    def validate_geometry(self, value):
        """Valida o nome da geometria construindo-a"""
        try:
            build_geometry(value)
        except ValueError as e:
            raise serializers.ValidationError(str(e))
        return value

    def validate_trunc(self, value):
        try:
            trunc = Truncation.parse(value)
        except ValueError as e:
            raise serializers.ValidationError(str(e))
        if not trunc.irreps():
            raise serializers.ValidationError('O truncamento não admite nenhuma irrep.')
        return trunc

    def validate_g(self, value):
        """Lista de acoplamentos positivos"""
        try:
            values = tuple(float(t) for t in _split(value))
        except ValueError:
            raise serializers.ValidationError(f'Acoplamentos inválidos: {value!r}')
        if not values or any(not g > 0 for g in values):
            raise serializers.ValidationError('Os acoplamentos devem ser positivos.')
        return values

    def validate_sectors(self, value):
        sectors = tuple(_split(value))
        for sector in sectors:
            if any(ch not in '+-' for ch in sector):
                raise serializers.ValidationError(f'Setor inválido: {sector!r} (use sinais + e -)')
        return sectors

    def validate_dt(self, value):
        if not value > 0:
            raise serializers.ValidationError('O passo dt deve ser positivo.')
        return value

    def validate_scheme(self, value):
        if value not in BASIS_SCHEMES and value not in NAMED_OPERATORS:
            choices = ', '.join(BASIS_SCHEMES + tuple(NAMED_OPERATORS))
            raise serializers.ValidationError(f'Esquema desconhecido: {value!r} (opções: {choices})')
        return value

    def validate_lambdas(self, value):
        try:
            lambdas = tuple(int(t) for t in _split(value))
        except ValueError:
            raise serializers.ValidationError(f'Cortes inválidos: {value!r}')
        if not lambdas or any(lam < 0 for lam in lambdas):
            raise serializers.ValidationError('Os cortes Λ devem ser inteiros não negativos.')
        if list(lambdas) != sorted(set(lambdas)):
            raise serializers.ValidationError('Os cortes Λ devem ser estritamente crescentes.')
        return lambdas

    def validate_window(self, value):
        if not value:
            return None
        try:
            lo, hi = (int(t) for t in _split(value))
        except ValueError:
            raise serializers.ValidationError(f'Janela inválida: {value!r} (use "j_min,j_max")')
        if lo < 0 or hi < lo:
            raise serializers.ValidationError('A janela precisa de 0 ≤ j_min ≤ j_max.')
        return lo, hi

    def validate(self, attrs):
        """Validações gerais"""
        unknown = sorted(set(self.initial_data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError({
                key: 'Chave desconhecida.' for key in unknown
            })

        if attrs['scheme'] == 'local_qudit' and attrs['mode'] != 'local':
            raise serializers.ValidationError({
                'scheme': 'O esquema local_qudit só existe no modo local.'
            })
        if attrs['subcommand'] == 'converge' and attrs['lambdas'][0] < 1:
            raise serializers.ValidationError({
                'lambdas': 'A convergência precisa de cortes Λ ≥ 1.'
            })
        if attrs['observable'] == Observable.ELECTRIC_ENERGY.value and attrs.get('time') is None:
            if attrs['subcommand'] == 'converge':
                raise serializers.ValidationError({
                    'time': 'A energia elétrica precisa de um tempo.'
                })
        return attrs

    def create(self, validated_data):
        """Cria a RunConfig imutável"""
        return RunConfig(**validated_data)


def read_ini(path):
    """
    Pares chave-valor da secção [run] de um ficheiro INI

    Raises:
        serializers.ValidationError: ficheiro ilegível ou sem a secção
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding='utf-8') as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as e:
        raise serializers.ValidationError({'config': f'Não foi possível ler {path}: {e}'})
    if not parser.has_section(CONFIG_SECTION):
        raise serializers.ValidationError({'config': f'{path} não tem a secção [{CONFIG_SECTION}]'})
    return dict(parser.items(CONFIG_SECTION))


def load_run_config(subcommand, path=None, overrides=None):
    """
    Junta valores por omissão, ficheiro e linha de comando e valida

    Args:
        subcommand (str): nome do subcomando
        path (str | None): ficheiro INI
        overrides (dict): valores da linha de comando; None não sobrepõe

    Returns:
        RunConfig: configuração validada

    Raises:
        serializers.ValidationError: configuração inválida
    """
    data = dict(SUBCOMMAND_DEFAULTS.get(subcommand, {}))
    if path:
        from_file = read_ini(path)
        if from_file.get('subcommand', subcommand) != subcommand:
            raise serializers.ValidationError({
                'subcommand': f'O ficheiro é de {from_file["subcommand"]!r}, não de {subcommand!r}'
            })
        data.update(from_file)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    data['subcommand'] = subcommand

    serializer = RunConfigSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    config = serializer.save()
    logger.info(f'Configuração de {subcommand} validada: {config.describe()}')
    return config
