template<unsigned int n>
class jjava_lang_BooleanARRAYD:public jjava_lang_Object{
    public:inline operator jjava_lang_ObjectARRAYD< n >()const;
    public:inline operator jjava_io_SerializableARRAYD< n >()const;
    public:inline operator jjava_lang_Cloneable()const;
    public:inline jjava_lang_BooleanARRAYD();
    public:inline jjava_lang_BooleanARRAYD(jobject);
};

typedef jjava_lang_BooleanARRAYD< 1 > jjava_lang_BooleanArray;
typedef jjava_lang_BooleanARRAYD< 2 > jjava_lang_BooleanArrayArray;
