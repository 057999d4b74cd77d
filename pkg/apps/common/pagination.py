"""
Pagination for the lab API.
"""

from rest_framework.pagination import PageNumberPagination
from rest_framework.response import Response


class StandardResultsSetPagination(PageNumberPagination):
    """Numbered pages that also report total_pages and current_page."""

    page_size_query_param = 'page_size'
    max_page_size = 100

    def get_paginated_response(self, data):
        paginator = self.page.paginator
        return Response({
            'count': paginator.count,
            'next': self.get_next_link(),
            'previous': self.get_previous_link(),
            'total_pages': paginator.num_pages,
            'current_page': self.page.number,
            'results': data,
        })

    def get_paginated_response_schema(self, schema):
        response = super().get_paginated_response_schema(schema)
        response['properties']['total_pages'] = {'type': 'integer', 'example': 1}
        response['properties']['current_page'] = {'type': 'integer', 'example': 1}
        return response
