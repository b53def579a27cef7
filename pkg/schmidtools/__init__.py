from .arith.interval import Interval, Ball2, Similarity
from .arith.enclosure import Enclosure
from .sets.cantor import CantorSpec, TERNARY
from .sets.contfrac import CFWord

from .games.params import GameParams, Obstacle, Verdict
from .games.game import Transcript, run_match, replay_transcript
from .games.alice import AliceStrategy, CombineMode
from .games.bob import BobStrategy

from .analysis.logger import Logger
from .analysis.certify import (APCertificate, PointCertificate, SumsetCertificate,
                               FoldingCertificate)
from .analysis.audit import audit_certificate
from .analysis.dimension import DimensionEstimate

from .exceptions import (SchmidtoolsError, PipelineFailure, CertificateError,
                         IllegalMoveError, ResourceLimitError)
