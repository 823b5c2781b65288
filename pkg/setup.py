try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

setup(
    name='quatlab',
    version='0.3.0',
    packages=['quatlab'],
    py_modules=['quatlab_main'],
    keywords=['quaternions','matrix invariants','simultaneous triangularization','trace identities'],
    license='BSD 3-Clause',
    description='quaternionic linear algebra: Sp(2) classification, trace identities, simultaneous triangularization and the ideal of trace polynomials vanishing on triangularizable pairs',
    install_requires=['numpy>=1.20', 'sympy>=1.7'],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['quatlab = quatlab.cli:run_main']},
    python_requires='>=3.8',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ]

)
