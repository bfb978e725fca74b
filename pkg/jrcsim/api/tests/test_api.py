from http import HTTPStatus

from django.test import Client, TestCase

from core.tests.utils import colorize_msg
from experiments.models import ExperimentRun


class ExperimentRunApiTests(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.timing = ExperimentRun.objects.create(
            kind='timing', experiment='timing', seed=2024,
            config_hash='aaaaaaaaaaaaaaaa', config={'system': {'pulses': 2}},
            summary={'stage1_ms': {'standard': 80.1}}, output_dir='results',
        )
        cls.point = ExperimentRun.objects.create(
            kind='mc_rmse', experiment='mc_point', channel='rician',
            seed=7, trials=1000, config_hash='bbbbbbbbbbbbbbbb',
            output_dir='results', checks_passed=True,
        )
        ExperimentRun.objects.create(
            kind='mc_rmse', experiment='mc_multi', seed=7, trials=1000,
            config_hash='cccccccccccccccc', output_dir='results',
        )
        cls.url_list = '/api/v1/runs/'

    def setUp(self):
        self.guest_client = Client()

    def test_list_accessed_by_guest(self):
        """Тест - список запусков доступен без входа."""
        response = self.guest_client.get(self.url_list, {'limit': 2})
        self.assertEqual(response.status_code, HTTPStatus.OK)
        data = response.json()
        self.assertEqual(data['count'], 3)
        self.assertEqual(len(data['results']), 2)
        self.assertNotIn('config', data['results'][0])

    def test_filters(self):
        """Тест - фильтрация по типу, каналу и хешу."""
        cases = {
            'kind': ({'kind': 'mc_rmse'}, 2),
            'experiment': ({'experiment': 'mc_point'}, 1),
            'channel': ({'channel': 'rician'}, 1),
            'config_hash': ({'config_hash': 'aaaaaaaaaaaaaaaa'}, 1),
        }
        for name, (params, expected) in cases.items():
            with self.subTest(filter=name):
                response = self.guest_client.get(self.url_list, params)
                msg = colorize_msg(f'Фильтр {name} вернул не то число')
                self.assertEqual(response.json()['count'], expected, msg)

    def test_detail_has_config(self):
        response = self.guest_client.get(f'{self.url_list}{self.timing.pk}/')
        self.assertEqual(response.status_code, HTTPStatus.OK)
        data = response.json()
        self.assertEqual(data['config']['system']['pulses'], 2)
        self.assertEqual(data['summary']['stage1_ms']['standard'], 80.1)

    def test_read_only(self):
        """Тест - запуски нельзя создавать и удалять через API."""
        response = self.guest_client.post(
            self.url_list, {'kind': 'timing'}, content_type='application/json'
        )
        self.assertEqual(response.status_code, HTTPStatus.METHOD_NOT_ALLOWED)
        response = self.guest_client.delete(
            f'{self.url_list}{self.point.pk}/'
        )
        self.assertEqual(response.status_code, HTTPStatus.METHOD_NOT_ALLOWED)
        self.assertEqual(ExperimentRun.objects.count(), 3)

    def test_missing_run(self):
        response = self.guest_client.get(f'{self.url_list}999/')
        self.assertEqual(response.status_code, HTTPStatus.NOT_FOUND)
