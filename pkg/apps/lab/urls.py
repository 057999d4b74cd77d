"""
URLs for the lab app.
"""

from django.urls import path, include
from rest_framework.routers import DefaultRouter
from .views import ExperimentRunViewSet, exppair_evaluate, floor_sum_view, pade_view

router = DefaultRouter()
router.register(r'runs', ExperimentRunViewSet)

urlpatterns = [
    path('', include(router.urls)),
    path('floor-sums/', floor_sum_view, name='floor-sum'),
    path('pade/', pade_view, name='pade'),
    path('exppairs/evaluate/', exppair_evaluate, name='exppair-evaluate'),
]
