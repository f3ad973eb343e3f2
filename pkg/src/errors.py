# -*- coding: utf-8 -*-
"""
Hierarquia de Exceções do Projeto.

Todas as exceções derivam de `AnosovError`, que por sua vez deriva de
`ValueError`. Assim, quem só trata `ValueError` continua funcionando, e o
CLI consegue distinguir erros do domínio (saída 1) de certificados
reprovados (saída 2, que não são erros).
"""


class AnosovError(ValueError):
    """Erro base para entradas ou estados numéricos inválidos."""


class NonFinite(AnosovError):
    """A matriz contém entradas NaN ou infinitas."""


class SingularInput(AnosovError):
    """O menor valor singular está abaixo de `svd_tol`."""


class NotUnimodular(AnosovError):
    """O determinante não é 1 dentro de `det_tol`."""


class BadFace(AnosovError):
    """Conjunto de pivôs fora de {1, ..., d-1} ou não estritamente crescente."""


class DimMismatch(AnosovError):
    """Objetos de dimensões diferentes foram combinados."""


class NotIotaInvariant(AnosovError):
    """A face não é fixada pela involução de oposição (D != d - D)."""


class FaceMismatch(AnosovError):
    """Flags de tipos incompatíveis foram comparados."""


class DegeneratePosition(AnosovError):
    """Um posto numérico caiu na faixa ambígua; a posição relativa não é confiável."""


class NotRegular(AnosovError):
    """Os gaps de raízes relevantes não excedem o limiar exigido."""


class UnknownGenerator(AnosovError):
    """A palavra usa uma letra que não é gerador nem inverso de gerador."""


class NotReduced(AnosovError):
    """A palavra contém um par cancelável (letra seguida do seu inverso)."""


class BallTooLarge(AnosovError):
    """A bola de palavras excede o orçamento de avaliações configurado."""


class NoWitness(AnosovError):
    """Nenhum elemento da bola expande no ponto limite dado."""


class BadEigenvalues(AnosovError):
    """Autovalores não positivos, não decrescentes ou com produto diferente de 1."""


class NotProximal(AnosovError):
    """O elemento não tem gaps de módulo de autovalores nos pivôs da face."""


class NotGeneric(AnosovError):
    """Os quatro flags fixos dos geradores não são dois a dois antipodais."""


class NeighborhoodsOverlap(AnosovError):
    """As vizinhanças do ping-pong se intersectam."""


class CapExceeded(AnosovError):
    """Nenhuma potência até o teto passou na certificação."""


class MatrixFormatError(AnosovError):
    """Arquivo de matrizes mal formatado."""
