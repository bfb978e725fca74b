from django.urls import include, path
from rest_framework.routers import DefaultRouter

from api.views import ExperimentRunViewSet

app_name = 'api'

v1_router = DefaultRouter()
v1_router.register('runs', ExperimentRunViewSet, basename='runs')

urlpatterns = [
    path('v1/', include(v1_router.urls))
]
