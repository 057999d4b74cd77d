"""
Views for recorded experiment runs and the small on-demand calculators.
"""

import io
import logging

from django.http import HttpResponse
from django_filters.rest_framework import DjangoFilterBackend
from drf_spectacular.utils import OpenApiParameter, extend_schema, extend_schema_view
from rest_framework import filters, serializers, status, viewsets
from rest_framework.decorators import action, api_view, permission_classes
from rest_framework.permissions import AllowAny, IsAuthenticated, IsAuthenticatedOrReadOnly
from rest_framework.response import Response

from apps.common.exceptions import LabError
from apps.common.pagination import StandardResultsSetPagination
from apps.exact.arithmetic import format_rational
from apps.exppairs.processes import eval_word
from apps.floorsum.sums import fast_Sf
from apps.pade.polynomials import get_pade

from .csvio import render_cell, write_rows
from .experiments import run_experiment
from .models import ExperimentRun
from .serializers import (
    ExperimentRunListSerializer,
    ExperimentRunSerializer,
    ExpPairQuerySerializer,
    FloorSumQuerySerializer,
    PadeQuerySerializer,
)

logger = logging.getLogger(__name__)

# fit reads a file path on the server, so it stays command-line only
API_EXPERIMENTS = ['sum', 'decompose', 'cf', 'pade', 'spacing', 'exppair', 'sweep', 'psi']


@extend_schema_view(
    list=extend_schema(
        summary="List Experiment Runs",
        description="Get a list of recorded experiment runs.",
        tags=["Runs"]
    ),
    retrieve=extend_schema(
        summary="Get Run Details",
        description="Retrieve the parameters, summary and rows of a run.",
        tags=["Runs"]
    ),
    destroy=extend_schema(
        summary="Delete Run",
        description="Delete a run (sets is_active=False).",
        tags=["Runs"]
    ),
)
class ExperimentRunViewSet(viewsets.ModelViewSet):
    """
    ViewSet for recorded runs.

    Runs are created by the management commands with --record or by the
    run action; they are never edited through the API.
    """

    queryset = ExperimentRun.objects.all()
    permission_classes = [IsAuthenticatedOrReadOnly]
    pagination_class = StandardResultsSetPagination
    filter_backends = [DjangoFilterBackend, filters.SearchFilter, filters.OrderingFilter]
    http_method_names = ['get', 'post', 'delete', 'head', 'options']

    filterset_fields = ['kind', 'status', 'is_active']
    search_fields = ['kind', 'error_message', 'created_by']
    ordering_fields = ['created_at', 'finished_at', 'kind', 'status', 'row_count']
    ordering = ['-created_at']

    def get_serializer_class(self):
        if self.action == 'list':
            return ExperimentRunListSerializer
        return ExperimentRunSerializer

    def create(self, request, *args, **kwargs):
        return Response(
            {'error': 'Runs are created through the run action'},
            status=status.HTTP_405_METHOD_NOT_ALLOWED
        )

    def destroy(self, request, *args, **kwargs):
        instance = self.get_object()
        instance.soft_delete(user=request.user)
        return Response(
            {
                'message': f'Run {instance.id} has been deleted',
                'id': instance.id
            },
            status=status.HTTP_200_OK
        )

    @extend_schema(
        summary="Run Experiment",
        description=(
            "Run an experiment synchronously and record it. The body holds "
            "`kind` and `parameters`, the same parameters the management "
            "command accepts (rationals as p/q strings)."
        ),
        tags=["Runs"],
        request={
            'application/json': {
                'type': 'object',
                'properties': {
                    'kind': {'type': 'string', 'enum': API_EXPERIMENTS},
                    'parameters': {'type': 'object'}
                },
                'required': ['kind']
            }
        },
        responses={201: ExperimentRunSerializer},
    )
    @action(detail=False, methods=['post'], permission_classes=[IsAuthenticated])
    def run(self, request):
        kind = request.data.get('kind')
        parameters = request.data.get('parameters') or {}
        if kind not in API_EXPERIMENTS:
            return Response(
                {'error': 'Unknown experiment', 'details': {'kind': API_EXPERIMENTS}},
                status=status.HTTP_400_BAD_REQUEST
            )
        if not isinstance(parameters, dict):
            return Response(
                {'error': 'Parameters must be an object'},
                status=status.HTTP_400_BAD_REQUEST
            )

        run = ExperimentRun.objects.create(kind=kind, created_by=str(request.user.username))
        run.start(user=request.user.username)
        try:
            result = run_experiment(kind, parameters)
        except serializers.ValidationError as e:
            run.fail(e.detail, user=request.user.username)
            return Response(
                {'error': 'Invalid parameters', 'details': e.detail},
                status=status.HTTP_400_BAD_REQUEST
            )
        except LabError as e:
            logger.warning(f"API {kind} run {run.id} failed: {e.message}")
            run.fail(e.message, user=request.user.username)
            return Response(e.as_dict(), status=status.HTTP_400_BAD_REQUEST)

        run.parameters = result.parameters
        run.complete(
            summary=result.summary,
            header=result.header,
            rows=[[render_cell(value) for value in row] for row in result.rows],
            user=request.user.username,
        )
        return Response(ExperimentRunSerializer(run).data, status=status.HTTP_201_CREATED)

    @extend_schema(
        summary="Download Run CSV",
        description="The rows of a completed run as CSV.",
        tags=["Runs"],
        responses={(200, 'text/csv'): str},
    )
    @action(detail=True, methods=['get'])
    def csv(self, request, pk=None):
        instance = self.get_object()
        if instance.status != 'completed':
            return Response(
                {'error': f'Run has status {instance.status}, no rows to export'},
                status=status.HTTP_400_BAD_REQUEST
            )
        stream = io.StringIO()
        write_rows(stream, instance.results.get('header', []), instance.results.get('rows', []))
        response = HttpResponse(stream.getvalue(), content_type='text/csv')
        response['Content-Disposition'] = f'attachment; filename="{instance.kind}-{instance.id}.csv"'
        return response


def _bad_request(error, details):
    return Response({'error': error, 'details': details}, status=status.HTTP_400_BAD_REQUEST)


@extend_schema(
    summary="Floor Sum",
    description="Exact S_f(x) = sum over n <= x of f(floor(x/n)) for a power-supported f.",
    tags=["Calculators"],
    parameters=[
        OpenApiParameter('r', int, description='Power of the support'),
        OpenApiParameter('h', str, description="h mini-language: one, const:p/q or pow:a"),
        OpenApiParameter('x', str, description='Positive integer'),
    ],
)
@api_view(['GET'])
@permission_classes([AllowAny])
def floor_sum_view(request):
    serializer = FloorSumQuerySerializer(data=request.query_params)
    if not serializer.is_valid():
        return _bad_request('Invalid parameters', serializer.errors)
    F, x = serializer.validated_data['F'], serializer.validated_data['x']
    try:
        value = fast_Sf(F, x)
    except LabError as e:
        return Response(e.as_dict(), status=status.HTTP_400_BAD_REQUEST)
    return Response({'r': F.r, 'h': F.label, 'x': x, 's_f': format_rational(value)})


@extend_schema(
    summary="Polynomial Pair",
    description="The primitive (P, Q) pair for (r, l) with its remainder order and bound constant.",
    tags=["Calculators"],
    parameters=[
        OpenApiParameter('r', int, description='r >= 2'),
        OpenApiParameter('l', int, description='1 <= l <= r'),
    ],
)
@api_view(['GET'])
@permission_classes([AllowAny])
def pade_view(request):
    serializer = PadeQuerySerializer(data=request.query_params)
    if not serializer.is_valid():
        return _bad_request('Invalid parameters', serializer.errors)
    try:
        pair = get_pade(serializer.validated_data['r'], serializer.validated_data['l'])
    except LabError as e:
        return Response(e.as_dict(), status=status.HTTP_400_BAD_REQUEST)
    return Response(pair.as_dict())


@extend_schema(
    summary="Evaluate Exponent Pair",
    description="Apply a word over A and B (rightmost first) to the trivial pair (1/2, 1/2).",
    tags=["Calculators"],
    parameters=[OpenApiParameter('word', str, description='For example BA2 or BABA2BA2')],
)
@api_view(['GET'])
@permission_classes([AllowAny])
def exppair_evaluate(request):
    serializer = ExpPairQuerySerializer(data=request.query_params)
    if not serializer.is_valid():
        return _bad_request('Invalid word', serializer.errors)
    return Response(eval_word(serializer.validated_data['word']).as_dict())
