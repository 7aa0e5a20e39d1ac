from setuptools import find_packages, setup

setup(
    name='intergraph',
    version='0.1',
    description='Exact verification toolkit for diameters of intersection '
                'graphs of subgroups of finite simple groups.',

    # Author details
    author='Intergraph developers',

    # Choose your license
    license='BSD 3-Clause',
    # What does your project relate to?
    keywords='finite groups, subgroup lattice, intersection graph, '
             'finite fields, unitary groups',

    packages=find_packages(),
    package_data={'intergraph.datasets': ['data/*.json', 'data/presets/*.txt']},
    install_requires=[
        'numpy>=1.24',
        'scipy>=1.10',
        'scikit-learn>=1.4.0',
        'joblib>=1.2',
        'sympy>=1.12',
    ],
    extras_require={'full': ['jsonschema>=4.0']},
    entry_points={
        'console_scripts': ['intergraph=intergraph.cli:main'],
    },
)
