import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.getenv(
    'JRCSIM_SECRET_KEY', 'jrcsim-local-9v#p4m@x2q!7dz0s$ke1w+hb8r^c6t'
)

DEBUG = os.getenv('JRCSIM_DEBUG', 'True') == 'True'

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

ALLOWED_HOSTS = [
    'localhost',
    '127.0.0.1',
    '[::1]',
    'testserver',
]

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
    'django_filters',
    'core',
    'sequences',
    'phy',
    'scene',
    'channel',
    'radar',
    'comm',
    'protocol',
    'experiments',
    'api',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'jrcsim.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'jrcsim.wsgi.application'


DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(BASE_DIR, 'db.sqlite3'),
    }
}

LANGUAGE_CODE = 'ru-RU'

TIME_ZONE = 'Europe/Moscow'

USE_I18N = True

USE_TZ = True

STATIC_URL = '/static/'

REST_FRAMEWORK = {
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.IsAuthenticatedOrReadOnly',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [
        'rest_framework.authentication.SessionAuthentication',
    ],
    'DEFAULT_FILTER_BACKENDS': [
        'django_filters.rest_framework.DjangoFilterBackend',
    ],
}

LOG_LEVEL = os.getenv('JRCSIM_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'core', 'sequences', 'phy', 'scene', 'channel',
            'radar', 'comm', 'protocol', 'experiments', 'api',
        )
    },
}

# Физическая модель приёмопередатчика. Ключи совпадают с полями
# core.config.SystemConfig в верхнем регистре.
JRC_SIMULATION = {
    'CARRIER_FREQUENCY': 60e9,
    'CHIP_RATE': 1.76e9,
    'OFDM_RATE': 2.64e9,
    'PULSE_REPETITION_INTERVAL': 0.58e-6,
    'PULSES': 2,
    'BS_ELEMENTS': 32,
    'MU_ELEMENTS': 4,
    'BS_BEAMS': 32,
    'MU_BEAMS': 4,
    'BS_SPACING': 0.5,
    'MU_SPACING': 0.5,
    'CODEBOOK_MAX_ANGLE': 60.0,
    'TX_POWER_DBM': 15.0,
    'RADAR_TX_POWER_DBM': 46.0,
    'NOISE_FLOOR_DBM': -71.7,
    'FILTER_TAPS': 33,
    'FILTER_CUTOFF': 0.88e9,
    'WOLA_EDGE': 32,
    'LDPC_ITERATIONS': 20,
    'LDPC_NORMALIZATION': 0.75,
    'RANGE_BINS': 512,
    'AZIMUTH_FFT': 256,
    'CLEAN_THRESHOLD': 0.15,
    'CLEAN_MAX_ITER': 20,
    'CLEAN_MIN_SNR_DB': 15.0,
    'RANGE_GATE_BINS': 12,
    'AZIMUTH_GATE_BINS': 12,
    'MIN_RADIAL_VELOCITY': 0.3,
    'CLASSIFY_THRESHOLD': 0.5,
    'FMCW_SLOPE': 600e12,
    'FMCW_FFT': 8192,
    'INTER_PACKET_IDLE': 1e-6,
    'STANDARD_DATA_SYMBOLS': 20,
    'JRC_DATA_SYMBOLS': 10,
    'REALIGN_MARGIN_DB': 6.0,
    'BEAM_DETECTION_SNR_DB': 10.0,
    'PROCESSING_TIMES': {
        'rcp_dl': 16e-3,
        'rcp_ul': 16e-3,
        'detect': 2.5e-3,
        'extract': 1.6e-3,
        'rsp': 16e-3,
        'preamble_corr': 4.5e-3,
    },
}

EXPERIMENTS = {
    'OUTPUT_DIR': os.path.join(BASE_DIR, 'results'),
    'SEED': 2024,
    'TRIALS': 1000,
    'FULL_SCALE_TRIALS': 10000,
    'SNR_GRID_DB': [0, 5, 10, 15, 20, 25],
    'WORKERS': 1,
    'RICIAN_K_DB': 7.0,
    'ASSOCIATION_GATE_BINS': 5,
    'SESSION_DURATION': 1.0,
    'SESSION_LOG_INTERVAL': 2e-3,
    'SESSION_MU_SPEED': 10.0,
    'SESSION_MU_RCS': 10.0,
    'CAR_RANGE_GATE_BINS': 60,
    'CAR_AZIMUTH_GATE_BINS': 40,
}
