# src/models/__init__.py
from .galois import GaloisElem
from .splitting import ContextConstants, SplitElem, SplittingAlgebra
from .interval import Interval, RootEnclosure
from .cube import CubeModel, Orbit, Vertex
from .form import Form, LinMap, StandardForms
from .param_poly import AlphaMatrix, ParamPoly
